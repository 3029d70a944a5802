//! The hyperbolic root lattice E10: roots, reflections, root pairs and their
//! orthogonal complements.
//!
//! Simple roots are numbered along the diagram: a chain 0–1–…–8 with node 9
//! attached to node 2. Vectors are written in the simple-root basis.

mod bound;
mod word;

pub use bound::{
    e8_degree_product, e8_gram, n_lower_bound, theorem_constant, weyl_group_order, NBound,
    W_E8_ORDER,
};
pub use word::{positivity_search, WeylWord};

use crate::lattice::{orthogonal_complement, saturate, Embedding, GramMatrix};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

pub const RANK: usize = 10;

pub type RootVector = [i64; RANK];

/// Diagram edges of E10.
pub const EDGES: [(usize, usize); 9] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 8),
    (2, 9),
];

fn cartan() -> [[i64; RANK]; RANK] {
    let mut g = [[0i64; RANK]; RANK];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in &EDGES {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

pub fn e10_gram() -> GramMatrix {
    GramMatrix::new(cartan().iter().map(|r| r.to_vec()).collect())
        .expect("the E10 Cartan matrix is symmetric")
}

/// G·x: entry i is the inner product of x with the simple root α_i.
pub fn pairings(x: &RootVector) -> RootVector {
    let mut out = [0i64; RANK];
    for (i, o) in out.iter_mut().enumerate() {
        *o = 2 * x[i];
    }
    for &(a, b) in &EDGES {
        out[a] -= x[b];
        out[b] -= x[a];
    }
    out
}

pub fn inner(x: &RootVector, y: &RootVector) -> i64 {
    pairings(x).iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm(x: &RootVector) -> i64 {
    inner(x, x)
}

pub fn height(x: &RootVector) -> i64 {
    x.iter().sum()
}

pub fn simple_root(i: usize) -> RootVector {
    let mut v = [0; RANK];
    v[i] = 1;
    v
}

pub fn negate(x: &RootVector) -> RootVector {
    x.map(|c| -c)
}

pub fn is_positive(x: &RootVector) -> bool {
    x.iter().all(|&c| c >= 0)
}

pub fn is_negative(x: &RootVector) -> bool {
    x.iter().all(|&c| c <= 0)
}

pub fn to_root(v: &[i64]) -> Result<RootVector> {
    <RootVector>::try_from(v)
        .map_err(|_| Error::Invalid(format!("expected {RANK} coordinates, got {}", v.len())))
}

/// Roots of E10 are exactly its norm-2 vectors.
pub fn is_root(v: &[i64]) -> bool {
    to_root(v).is_ok_and(|r| norm(&r) == 2)
}

/// Reflection x ↦ x − (x·r) r in the root r.
pub fn reflect(r: &RootVector, x: &RootVector) -> Result<RootVector> {
    if norm(r) != 2 {
        return Err(Error::Invalid("reflection vector is not a root".into()));
    }
    let c = inner(x, r);
    let mut out = *x;
    for (o, ri) in out.iter_mut().zip(r) {
        *o -= c * ri;
    }
    Ok(out)
}

/// Reflection in the simple root α_i.
pub fn simple_reflect(i: usize, x: &RootVector) -> RootVector {
    let c = pairings(x)[i];
    let mut out = *x;
    out[i] -= c;
    out
}

/// Positive roots of height at most `max_height`, sorted by (height, coordinates).
///
/// Every positive root above height 1 is raised from a lower one by a simple
/// reflection, so closing the simple roots upward is exhaustive.
pub fn positive_roots(max_height: i64) -> Vec<RootVector> {
    let mut seen: HashSet<RootVector> = HashSet::new();
    let mut frontier: Vec<RootVector> = (0..RANK).map(simple_root).collect();
    if max_height < 1 {
        return Vec::new();
    }
    seen.extend(frontier.iter().copied());
    while let Some(b) = frontier.pop() {
        let pb = pairings(&b);
        for i in 0..RANK {
            if pb[i] < 0 {
                let mut up = b;
                up[i] -= pb[i];
                if height(&up) <= max_height && seen.insert(up) {
                    frontier.push(up);
                }
            }
        }
    }
    let mut out: Vec<RootVector> = seen.into_iter().collect();
    out.sort_by_key(|r| (height(r), *r));
    out
}

/// All roots with |height| ≤ H, ordered by |height|, positive before negative.
pub fn enumerate_roots(max_height: i64) -> Vec<RootVector> {
    let pos = positive_roots(max_height);
    let mut out: Vec<RootVector> = pos.iter().flat_map(|r| [*r, negate(r)]).collect();
    out.sort_by_key(|r| (height(r).abs(), height(r) < 0, *r));
    out
}

/// Pairs of roots are prenilpotent exactly when their inner product is at least −1.
pub fn is_prenilpotent(r: &RootVector, rp: &RootVector) -> Result<bool> {
    if norm(r) != 2 || norm(rp) != 2 {
        return Err(Error::Invalid("both vectors must be roots".into()));
    }
    Ok(inner(r, rp) >= -1)
}

/// Two roots together with their inner product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairRecord {
    pub r: RootVector,
    pub r_prime: RootVector,
    pub k: i64,
}

impl PairRecord {
    pub fn new(r: RootVector, r_prime: RootVector) -> Result<Self> {
        if norm(&r) != 2 || norm(&r_prime) != 2 {
            return Err(Error::Invalid("both vectors must be roots".into()));
        }
        Ok(PairRecord {
            k: inner(&r, &r_prime),
            r,
            r_prime,
        })
    }

    pub fn span_gram(&self) -> GramMatrix {
        GramMatrix::pair_span(self.k)
    }

    pub fn embedding(&self) -> Embedding {
        Embedding {
            ambient: e10_gram(),
            basis: vec![self.r.to_vec(), self.r_prime.to_vec()],
        }
    }

    /// Index of the span in its saturation.
    pub fn saturation_index(&self) -> num::BigInt {
        self.embedding().saturation_index()
    }

    pub fn max_height(&self) -> i64 {
        height(&self.r).abs().max(height(&self.r_prime).abs())
    }
}

/// Pairs of distinct roots of height ≤ H with inner product k, in search order.
///
/// Pairs are ordered by the position of the later root in `enumerate_roots`,
/// then the earlier one; at most `limit` are returned.
pub fn find_pairs(k: i64, max_height: i64, limit: usize, saturated_only: bool) -> Vec<PairRecord> {
    let roots = enumerate_roots(max_height);
    let pair: Vec<RootVector> = roots.iter().map(pairings).collect();
    let mut out = Vec::new();
    let mut seen_spans: BTreeSet<(RootVector, RootVector)> = BTreeSet::new();
    'outer: for j in 0..roots.len() {
        for i in 0..j {
            let ip: i64 = pair[i].iter().zip(&roots[j]).map(|(a, b)| a * b).sum();
            if ip != k {
                continue;
            }
            let rec = PairRecord {
                r: roots[i],
                r_prime: roots[j],
                k,
            };
            if saturated_only && !num::One::is_one(&rec.saturation_index()) {
                continue;
            }
            // A pair and its negation span the same sublattice.
            let (a, b) = (roots[i], roots[j]);
            let key = [
                (a, b),
                (b, a),
                (negate(&a), negate(&b)),
                (negate(&b), negate(&a)),
            ]
            .into_iter()
            .min()
            .expect("four candidates");
            if !seen_spans.insert(key) {
                continue;
            }
            out.push(rec);
            if out.len() >= limit {
                break 'outer;
            }
        }
    }
    out
}

pub fn find_pair(k: i64, max_height: i64) -> Option<PairRecord> {
    find_pairs(k, max_height, 1, false).into_iter().next()
}

/// Orthogonal complement in E10 of the saturation of the pair's span.
pub fn complement_of_pair(p: &PairRecord) -> Result<GramMatrix> {
    let sat = saturate(&p.embedding())?;
    orthogonal_complement(&sat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    #[test]
    fn gram_shape() {
        let g = e10_gram();
        assert!((0..RANK).all(|i| g.entry(i, i) == 2));
        assert_eq!(g.entry(2, 9), -1);
        assert_eq!(g.entry(8, 9), 0);
        let ds = g.det_signature();
        assert_eq!(ds.det, BigInt::from(-1));
        assert_eq!(ds.sig, (9, 1));
    }

    #[test]
    fn roots_and_reflections() {
        assert!(is_root(&simple_root(4)));
        let mut two = [0; RANK];
        two[4] = 2;
        assert!(!is_root(&two));
        for &(a, b) in &EDGES {
            let mut v = simple_root(a);
            v[b] = 1;
            assert!(is_root(&v));
        }
        let r = simple_root(3);
        assert_eq!(reflect(&r, &r).unwrap(), negate(&r));
        assert_eq!(reflect(&r, &simple_root(0)).unwrap(), simple_root(0));
        assert!(reflect(&two, &r).is_err());
        assert_eq!(
            simple_reflect(3, &simple_root(4)),
            reflect(&r, &simple_root(4)).unwrap()
        );
    }

    #[test]
    fn small_height_enumeration() {
        let h1 = enumerate_roots(1);
        assert_eq!(h1.len(), 20);
        let h2 = positive_roots(2);
        assert_eq!(h2.len(), 19);
        assert_eq!(positive_roots(4).len(), 37);
        for r in enumerate_roots(6) {
            assert!(is_root(&r));
        }
    }

    #[test]
    fn exhaustive_small_height_search_agrees() {
        // Every nonnegative vector of height ≤ 4 and norm 2 is found by the closure.
        let found: HashSet<RootVector> = positive_roots(4).into_iter().collect();
        let mut count = 0;
        let mut v = [0i64; RANK];
        fn rec(
            v: &mut RootVector,
            pos: usize,
            left: i64,
            found: &HashSet<RootVector>,
            count: &mut usize,
        ) {
            if pos == RANK {
                if height(v) > 0 && norm(v) == 2 {
                    assert!(found.contains(v), "missing root {v:?}");
                    *count += 1;
                }
                return;
            }
            for c in 0..=left {
                v[pos] = c;
                rec(v, pos + 1, left - c, found, count);
            }
            v[pos] = 0;
        }
        rec(&mut v, 0, 4, &found, &mut count);
        assert_eq!(count, found.len());
    }

    #[test]
    fn prenilpotency_by_inner_product() {
        let (a, b) = (simple_root(0), simple_root(1));
        assert!(is_prenilpotent(&a, &b).unwrap());
        assert!(!is_prenilpotent(&a, &negate(&a)).unwrap());
    }

    #[test]
    fn small_pairs() {
        let p = find_pair(-1, 1).unwrap();
        assert_eq!(inner(&p.r, &p.r_prime), -1);
        let p = find_pair(0, 1).unwrap();
        assert_eq!(p.k, 0);
        assert!(find_pair(3, 4).is_none());
    }
}
