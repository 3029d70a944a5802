//! Genus symbols: the collection of local symbols of a lattice, existence tests,
//! and the closed-form symbols of the pair span L(k) and its complement genus.

use crate::arith::{d_profile, factorize, kronecker, DProfile, E2Case};
use crate::lattice::GramMatrix;
use crate::padic::{
    jordan_symbol, negate_symbol, oddity, p_excess, unit_class, PAdicConstituent, PAdicSymbol, Sign,
};
use crate::{Error, Result};
use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Dimension, signature, determinant and the local symbols at every p | 2·det.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusSymbol {
    pub dim: usize,
    pub sig: (usize, usize),
    pub det: i64,
    pub locals: Vec<PAdicSymbol>,
}

impl GenusSymbol {
    pub fn new(dim: usize, sig: (usize, usize), det: i64, locals: Vec<PAdicSymbol>) -> Self {
        let mut locals = locals;
        locals.sort_by_key(|s| s.p);
        GenusSymbol {
            dim,
            sig,
            det,
            locals,
        }
    }

    pub fn local(&self, p: u64) -> Option<&PAdicSymbol> {
        self.locals.iter().find(|s| s.p == p)
    }

    pub fn local_map(&self) -> BTreeMap<u64, &PAdicSymbol> {
        self.locals.iter().map(|s| (s.p, s)).collect()
    }

    /// Primes dividing 2·det.
    pub fn relevant_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = factorize(self.det.unsigned_abs()).primes().collect();
        if !ps.contains(&2) {
            ps.insert(0, 2);
        }
        ps
    }

    /// Flips the sign of the constituent at `scale` of the local symbol at `p`.
    pub fn with_sign_flipped(&self, p: u64, scale: i32) -> Result<GenusSymbol> {
        let mut out = self.clone();
        let c = out
            .locals
            .iter_mut()
            .find(|s| s.p == p)
            .and_then(|s| s.constituents.iter_mut().find(|c| c.scale == scale))
            .ok_or_else(|| Error::Invalid(format!("no constituent at p = {p}, scale {scale}")))?;
        c.sign = c.sign.flip();
        Ok(out)
    }
}

impl fmt::Display for GenusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim {} sig ({},{}) det {}",
            self.dim, self.sig.0, self.sig.1, self.det
        )?;
        for s in &self.locals {
            write!(f, " | p={}: {}", s.p, s)?;
        }
        Ok(())
    }
}

/// Whether two genus symbols agree in dimension, signature, determinant and
/// the basis-independent invariants of every local symbol.
pub fn same_invariants(a: &GenusSymbol, b: &GenusSymbol) -> bool {
    a.dim == b.dim
        && a.sig == b.sig
        && a.det == b.det
        && a.locals.len() == b.locals.len()
        && a.locals
            .iter()
            .zip(&b.locals)
            .all(|(x, y)| x.invariants() == y.invariants())
}

/// The genus of a nondegenerate Gram matrix.
pub fn genus_of(g: &GramMatrix) -> Result<GenusSymbol> {
    let ds = g.det_signature();
    let det = ds
        .det
        .to_i64()
        .ok_or_else(|| Error::Unsupported("determinant does not fit in i64".into()))?;
    if det == 0 {
        return Err(Error::Degenerate);
    }
    let mut genus = GenusSymbol::new(g.dim(), ds.sig, det, Vec::new());
    let locals = genus
        .relevant_primes()
        .into_iter()
        .map(|p| jordan_symbol(g, p))
        .collect::<Result<Vec<_>>>()?;
    genus.locals = locals;
    Ok(genus)
}

fn two_class(x: i64) -> Sign {
    unit_class(x as i128, 2)
}

fn legendre(a: i64, p: u64) -> Sign {
    Sign::from_int(kronecker(a as i128, p as i128))
}

/// Local symbols of the pair span [[2,k],[k,2]] at every p | 2d.
pub fn predicted_l_symbols(k: i64) -> Result<BTreeMap<u64, PAdicSymbol>> {
    let prof = d_profile(k)?;
    let mut out = BTreeMap::new();
    out.insert(2, predicted_l_two(&prof)?);
    for pp in prof.odd_primes() {
        let (p, f) = (pp.p, pp.f as i64);
        let s = PAdicSymbol::new(
            p,
            vec![
                PAdicConstituent::odd(0, 1, legendre(2, p)),
                PAdicConstituent::odd(pp.e as i32, 1, legendre(-2 * f, p)),
            ],
        )?;
        out.insert(p, s);
    }
    Ok(out)
}

fn predicted_l_two(prof: &DProfile) -> Result<PAdicSymbol> {
    let two = prof.at(2).expect("p = 2 is always profiled");
    let f = two.f as i64;
    let cs = match prof.e2_case {
        E2Case::E0 => vec![PAdicConstituent::type_two(0, 2, Sign::Minus)],
        E2Case::E2 => vec![PAdicConstituent::type_one(1, 2, two_class(-f), 1 - f)],
        E2Case::E5Plus => vec![
            PAdicConstituent::type_one(1, 1, Sign::Plus, 1),
            PAdicConstituent::type_one(two.e as i32 - 1, 1, two_class(-f), -f),
        ],
    };
    PAdicSymbol::new(2, cs)
}

/// The 6-dimensional unimodular block added to the negated pair span.
///
/// At odd p its sign is (−1|p), forced by the determinant condition.
pub fn unimodular_block(p: u64) -> PAdicSymbol {
    let c = if p == 2 {
        PAdicConstituent::type_two(0, 6, Sign::Plus)
    } else {
        PAdicConstituent::odd(0, 6, legendre(-1, p))
    };
    PAdicSymbol {
        p,
        constituents: vec![c],
    }
}

/// The genus of the orthogonal complement of L(k) in E10.
pub fn predicted_k_genus(k: i64) -> Result<GenusSymbol> {
    let prof = d_profile(k)?;
    let two = prof.at(2).expect("p = 2 is always profiled");
    let f2 = two.f as i64;
    let k2 = match prof.e2_case {
        E2Case::E0 => vec![PAdicConstituent::type_two(0, 8, Sign::Minus)],
        E2Case::E2 => vec![
            PAdicConstituent::type_two(0, 6, Sign::Plus),
            PAdicConstituent::type_one(1, 2, two_class(f2), f2 - 1),
        ],
        E2Case::E5Plus => vec![
            PAdicConstituent::type_two(0, 6, Sign::Plus),
            PAdicConstituent::type_one(1, 1, Sign::Plus, -1),
            PAdicConstituent::type_one(two.e as i32 - 1, 1, two_class(f2), f2),
        ],
    };
    let mut locals = vec![PAdicSymbol::new(2, k2)?];
    for pp in prof.odd_primes() {
        let p = pp.p;
        locals.push(PAdicSymbol::new(
            p,
            vec![
                PAdicConstituent::odd(0, 7, legendre(2, p)),
                PAdicConstituent::odd(pp.e as i32, 1, legendre(2 * pp.f as i64, p)),
            ],
        )?);
    }
    let det = i64::try_from(prof.d).map_err(|_| Error::Domain(format!("k = {k} too large")))?;
    Ok(GenusSymbol::new(8, (8, 0), det, locals))
}

/// Local symbols of the complement built as unimodular block ⊕ negated L.
pub fn constructed_k_locals(k: i64) -> Result<BTreeMap<u64, PAdicSymbol>> {
    predicted_l_symbols(k)?
        .into_iter()
        .map(|(p, s)| Ok((p, unimodular_block(p).direct_sum(&negate_symbol(&s))?)))
        .collect()
}

/// Whether a lattice with these local data exists: determinant classes match
/// at every place and the oddity formula holds.
pub fn genus_exists(g: &GenusSymbol) -> Result<bool> {
    let (pos, neg) = g.sig;
    if pos + neg != g.dim || g.det == 0 {
        return Ok(false);
    }
    // Real place: the sign of the determinant is (−1)^neg.
    if (g.det < 0) != (neg % 2 == 1) {
        return Ok(false);
    }
    for p in g.relevant_primes() {
        let Some(s) = g.local(p) else {
            return Ok(false);
        };
        if s.dim() != g.dim || !s.matches_det(g.det as i128) {
            return Ok(false);
        }
    }
    for s in &g.locals {
        if s.dim() != g.dim || !s.matches_det(g.det as i128) {
            return Ok(false);
        }
    }
    let Some(two) = g.local(2) else {
        return Ok(false);
    };
    let mut lhs = pos as i64 - neg as i64;
    for s in g.locals.iter().filter(|s| s.p != 2) {
        lhs += p_excess(s)? as i64;
    }
    Ok(lhs.rem_euclid(8) == oddity(two)? as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_symbols_small_k() {
        let g = predicted_k_genus(3).unwrap();
        assert_eq!(g.local(2).unwrap().to_string(), "1^{-8}_II");
        assert_eq!(g.local(5).unwrap().to_string(), "1^{-7} 5^{-1}");
        let g = predicted_k_genus(4).unwrap();
        assert_eq!(g.local(2).unwrap().to_string(), "1^{+6}_II 2^{-2}_2");
        assert_eq!(g.local(3).unwrap().to_string(), "1^{-7} 3^{-1}");
        let g = predicted_k_genus(6).unwrap();
        assert_eq!(
            g.local(2).unwrap().to_string(),
            "1^{+6}_II 2^{+1}_7 (2^4)^{+1}_1"
        );
        assert_eq!(g.locals.len(), 1);
    }

    #[test]
    fn pair_span_symbols_small_k() {
        let l = predicted_l_symbols(3).unwrap();
        assert_eq!(l[&2].to_string(), "1^{-2}_II");
        assert_eq!(l[&5].to_string(), "1^{-1} 5^{-1}");
        let l = predicted_l_symbols(4).unwrap();
        assert_eq!(l[&2].to_string(), "2^{-2}_6");
        assert_eq!(l[&3].to_string(), "1^{-1} 3^{+1}");
    }

    #[test]
    fn existence() {
        for k in [3, 4, 5, 6, 10, 14, 50] {
            assert!(
                genus_exists(&predicted_k_genus(k).unwrap()).unwrap(),
                "k = {k}"
            );
        }
        let flipped = predicted_k_genus(4)
            .unwrap()
            .with_sign_flipped(2, 1)
            .unwrap();
        assert!(!genus_exists(&flipped).unwrap());
        let e8 = GenusSymbol::new(
            8,
            (8, 0),
            1,
            vec![PAdicSymbol::new(2, vec![PAdicConstituent::type_two(0, 8, Sign::Plus)]).unwrap()],
        );
        assert!(genus_exists(&e8).unwrap());
    }

    #[test]
    fn genus_json_round_trip() {
        let g = predicted_k_genus(4).unwrap();
        let j = serde_json::to_string(&g).unwrap();
        assert!(j.starts_with(r#"{"dim":8,"sig":[8,0],"det":12,"locals":[{"p":2,"#));
        let back: GenusSymbol = serde_json::from_str(&j).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn genus_of_gram_matches_prediction_for_pair_span() {
        let g = genus_of(&GramMatrix::pair_span(3)).unwrap();
        assert_eq!(g.det, -5);
        assert_eq!(g.sig, (1, 1));
        assert!(genus_exists(&g).unwrap());
    }
}
