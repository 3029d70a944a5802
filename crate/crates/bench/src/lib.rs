//! Shared inputs for the benchmarks.

use e10pairs::e10::{complement_of_pair, find_pairs};
use e10pairs::lattice::GramMatrix;

/// Gram matrix of the span of two norm-2 roots with inner product k.
pub fn pair_gram(k: i64) -> GramMatrix {
    GramMatrix::pair_span(k)
}

/// Orthogonal complement of the first saturated root pair with inner product k.
pub fn complement_gram(k: i64) -> GramMatrix {
    let pair = find_pairs(k, 60, 1, true)
        .into_iter()
        .next()
        .expect("small k has a saturated pair below height 60");
    complement_of_pair(&pair).expect("saturated pair has a complement")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_have_expected_determinants() {
        assert_eq!(pair_gram(5).det(), (-21).into());
        assert_eq!(complement_gram(5).det(), 21.into());
    }
}
