//! Words in the simple reflections that make a pair of roots jointly positive or negative.

use super::{inner, is_negative, is_positive, negate, pairings, simple_reflect, RootVector, RANK};
use crate::lattice::{intmat, smith_normal_form};
use crate::padic::Sign;
use num::{BigInt, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

/// Simple-reflection indices, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(pub Vec<u8>);

impl WeylWord {
    pub fn apply(&self, x: &RootVector) -> RootVector {
        self.0
            .iter()
            .fold(*x, |acc, &i| simple_reflect(i as usize, &acc))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Cap on explored pair states in the breadth-first fallback.
const BFS_STATE_LIMIT: usize = 1 << 18;
/// Cap on chamber-descent steps for one starting vector.
const DESCENT_LIMIT: usize = 100_000;

/// The Weyl vector ρ = G⁻¹·1, integral because E10 is unimodular.
fn rho() -> RootVector {
    static RHO: OnceLock<RootVector> = OnceLock::new();
    *RHO.get_or_init(|| {
        let snf = smith_normal_form(&super::e10_gram().to_big());
        // U·G·V = I, so G⁻¹ = V·U.
        let inverse = intmat::mat_mul(&snf.v, &snf.u);
        let mut out = [0i64; RANK];
        for (o, row) in out.iter_mut().zip(&inverse) {
            let s: BigInt = row.iter().sum();
            *o = s.to_i64().expect("Weyl vector coordinates are small");
        }
        out
    })
}

fn is_future_timelike(y: &RootVector, rho: &RootVector) -> bool {
    inner(y, y) < 0 && inner(y, rho) < 0
}

/// Reflects y into the fundamental chamber, recording the reflections used.
fn descend(mut y: RootVector) -> Option<WeylWord> {
    let mut word = Vec::new();
    for _ in 0..DESCENT_LIMIT {
        let p = pairings(&y);
        match (0..RANK).find(|&i| p[i] < 0) {
            Some(i) => {
                y = simple_reflect(i, &y);
                word.push(i as u8);
            }
            None => return Some(WeylWord(word)),
        }
    }
    None
}

/// Future timelike vectors pairing positively with both roots.
///
/// If w·y lies in the fundamental chamber and (r, y) > 0, then w·r is positive.
fn chamber_witnesses(r: &RootVector, rp: &RootVector) -> Vec<RootVector> {
    let rho = rho();
    let k = inner(r, rp);
    let (h, hp) = (inner(r, &rho), inner(rp, &rho));
    let mut out = Vec::new();
    let combo = |n: i64, a: i64, b: i64| -> RootVector {
        let mut y = [0i64; RANK];
        for i in 0..RANK {
            y[i] = n * rho[i] + a * r[i] + b * rp[i];
        }
        y
    };
    let ok = |y: &RootVector| inner(y, r) > 0 && inner(y, rp) > 0 && is_future_timelike(y, &rho);
    // Shift ρ along r + r′, which pairs with both roots by 2 + k.
    if k >= -1 {
        for n in [1i64, 2, 4, 8, 16] {
            let need = (1 - n * h.min(hp)).max(0);
            let c = (need + 1 + k) / (2 + k);
            let y = combo(n, c, c);
            if ok(&y) {
                out.push(y);
                break;
            }
        }
    }
    // For indefinite spans the span itself contains timelike vectors.
    if k >= 3 {
        let bound = 2 * k;
        'search: for a in -bound..=bound {
            for b in -bound..=bound {
                let y = combo(0, a, b);
                if ok(&y) {
                    out.push(y);
                    break 'search;
                }
            }
        }
    }
    out
}

fn satisfied(x: &RootVector, y: &RootVector, sign: Sign) -> bool {
    match sign {
        Sign::Plus => is_positive(x) && is_positive(y),
        Sign::Minus => is_negative(x) && is_negative(y),
    }
}

/// Searches for a Weyl word sending both roots to positive (`Plus`) or negative
/// (`Minus`) roots, of length at most `max_len`.
///
/// Tries a chamber descent from a vector on the positive side of both roots, then
/// falls back to a breadth-first search over pair states. `None` means nothing
/// was found within the bounds, not that no word exists.
pub fn positivity_search(
    r: &RootVector,
    rp: &RootVector,
    sign: Sign,
    max_len: usize,
) -> Option<WeylWord> {
    if satisfied(r, rp, sign) {
        return Some(WeylWord(Vec::new()));
    }
    if *rp == negate(r) {
        // Images stay opposite, so they can never share a sign.
        return None;
    }
    let (a, b) = match sign {
        Sign::Plus => (*r, *rp),
        Sign::Minus => (negate(r), negate(rp)),
    };
    let mut best: Option<WeylWord> = None;
    for y in chamber_witnesses(&a, &b) {
        if let Some(w) = descend(y) {
            if w.len() <= max_len
                && satisfied(&w.apply(r), &w.apply(rp), sign)
                && best.as_ref().is_none_or(|bw| w.len() < bw.len())
            {
                best = Some(w);
            }
        }
    }
    if best.is_some() {
        return best;
    }
    breadth_first(r, rp, sign, max_len)
}

fn breadth_first(r: &RootVector, rp: &RootVector, sign: Sign, max_len: usize) -> Option<WeylWord> {
    let mut seen: HashSet<(RootVector, RootVector)> = HashSet::from([(*r, *rp)]);
    let mut queue: VecDeque<(RootVector, RootVector, Vec<u8>)> =
        VecDeque::from([(*r, *rp, Vec::new())]);
    while let Some((x, y, word)) = queue.pop_front() {
        if word.len() >= max_len {
            continue;
        }
        for i in 0..RANK {
            let (nx, ny) = (simple_reflect(i, &x), simple_reflect(i, &y));
            if !seen.insert((nx, ny)) {
                continue;
            }
            let mut nw = word.clone();
            nw.push(i as u8);
            if satisfied(&nx, &ny, sign) {
                return Some(WeylWord(nw));
            }
            if seen.len() > BFS_STATE_LIMIT {
                return None;
            }
            queue.push_back((nx, ny, nw));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_roots, find_pair, height, norm, simple_root};
    use super::*;

    #[test]
    fn weyl_vector_pairs_to_one() {
        let rho = rho();
        assert!(pairings(&rho).iter().all(|&c| c == 1));
        assert!(norm(&rho) < 0);
    }

    #[test]
    fn trivial_and_impossible_cases() {
        let (a, b) = (simple_root(1), simple_root(2));
        assert_eq!(
            positivity_search(&a, &b, Sign::Plus, 5),
            Some(WeylWord(vec![]))
        );
        assert_eq!(positivity_search(&a, &negate(&a), Sign::Plus, 30), None);
    }

    #[test]
    fn orthogonal_negative_simple_roots() {
        let (a, b) = (negate(&simple_root(0)), negate(&simple_root(2)));
        let w = positivity_search(&a, &b, Sign::Plus, 20).unwrap();
        assert!(w.len() <= 20);
        assert!(is_positive(&w.apply(&a)) && is_positive(&w.apply(&b)));
    }

    #[test]
    fn words_for_a_hyperbolic_pair() {
        let p = find_pair(3, 45).expect("a pair with inner product 3");
        for sign in [Sign::Plus, Sign::Minus] {
            let w = positivity_search(&p.r, &p.r_prime, sign, 10_000).unwrap();
            assert!(satisfied(&w.apply(&p.r), &w.apply(&p.r_prime), sign));
        }
    }

    #[test]
    fn small_envelope_pairs_all_succeed() {
        let roots: Vec<_> = enumerate_roots(2)
            .into_iter()
            .filter(|r| height(r).abs() <= 2)
            .collect();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if inner(&roots[i], &roots[j]) < -1 {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    assert!(
                        positivity_search(&roots[i], &roots[j], sign, 30).is_some(),
                        "{:?} {:?}",
                        roots[i],
                        roots[j]
                    );
                }
            }
        }
    }
}
