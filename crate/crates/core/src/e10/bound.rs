//! The order of W(E8) and the polynomial lower bound on prenilpotent pair orbits.

use super::cartan;
use crate::arith::{pi_fourth, zeta_d4_floor, IntervalReal, Rational};
use crate::lattice::GramMatrix;
use crate::{Error, Result};
use num::BigInt;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

/// |W(E8)|, the largest order of a finite subgroup of GL_8(Z).
pub const W_E8_ORDER: u64 = 696_729_600;

/// E8 as the sub-diagram on nodes 0..=6 and 9 of E10.
pub fn e8_gram() -> GramMatrix {
    let nodes = [0usize, 1, 2, 3, 4, 5, 6, 9];
    let c = cartan();
    GramMatrix::new(
        nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| c[i][j]).collect())
            .collect(),
    )
    .expect("sub-diagram of a symmetric matrix")
}

/// Product of the fundamental degrees of E8.
pub fn e8_degree_product() -> u64 {
    [2u64, 8, 12, 14, 18, 20, 24, 30].iter().product()
}

fn reflect_in(g: &GramMatrix, r: &[i64], x: &[i64]) -> Vec<i64> {
    let c = (g.dot(x, r) * 2 / g.norm(r)) as i64;
    x.iter().zip(r).map(|(a, b)| a - c * b).collect()
}

/// All roots of a finite-type root system given by a positive-definite Cartan Gram matrix.
fn finite_roots(g: &GramMatrix) -> Vec<Vec<i64>> {
    let n = g.dim();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier = simple.clone();
    while let Some(b) = frontier.pop() {
        for s in &simple {
            let up = reflect_in(g, s, &b);
            if up.iter().all(|&c| c >= 0) && seen.insert(up.clone()) {
                frontier.push(up);
            }
        }
    }
    let pos: Vec<Vec<i64>> = seen.into_iter().collect();
    let neg: Vec<Vec<i64>> = pos.iter().map(|v| v.iter().map(|c| -c).collect()).collect();
    pos.into_iter().chain(neg).collect()
}

/// Order of the Weyl group of a root system by orbit-stabilizer: the stabilizer
/// of a root is the reflection group of the roots orthogonal to it.
fn order_of(g: &GramMatrix, roots: &[Vec<i64>]) -> BigInt {
    let Some(first) = roots.first() else {
        return BigInt::from(1);
    };
    let mut orbit: HashSet<Vec<i64>> = HashSet::from([first.clone()]);
    let mut frontier = vec![first.clone()];
    while let Some(x) = frontier.pop() {
        for r in roots {
            let y = reflect_in(g, r, &x);
            if orbit.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let stab: Vec<Vec<i64>> = roots
        .iter()
        .filter(|r| g.dot(r, first) == 0)
        .cloned()
        .collect();
    BigInt::from(orbit.len()) * order_of(g, &stab)
}

/// Weyl group order of a finite-type Cartan Gram matrix.
pub fn weyl_group_order(g: &GramMatrix) -> Result<BigInt> {
    if !g.is_positive_definite() {
        return Err(Error::Domain(
            "Weyl group order needs a finite-type diagram".into(),
        ));
    }
    Ok(order_of(g, &finite_roots(g)))
}

/// Certified enclosure of 2(2 − π⁴/90) / (30240 π⁴ · 4 |W(E8)| · 1024).
pub fn theorem_constant(target_radius: &Rational) -> IntervalReal {
    let denom = Rational::from_integer(BigInt::from(30240u64 * 4 * 1024) * W_E8_ORDER);
    // The constant is below 1e-18, so relative accuracy 2^-80 is ample.
    let r = (target_radius * Rational::from_integer(BigInt::from(1u64 << 62)))
        .min(Rational::new(1.into(), BigInt::from(1u128 << 80)));
    let floor = zeta_d4_floor(&r);
    let p4 = pi_fourth(&r);
    let num = floor.scale(&Rational::from_integer(2.into()));
    (&num / &p4).scale(&denom.recip())
}

/// Lower bound on the number of W-orbits of prenilpotent pairs with inner product k.
#[derive(Debug, Clone, Serialize)]
pub struct NBound {
    pub k: i64,
    /// k² − 4 when k ≥ 3.
    pub d: Option<u64>,
    /// N(k) > 0 is established (for every k ≥ 1).
    pub positive: bool,
    #[serde(skip)]
    pub coefficient: Option<IntervalReal>,
    #[serde(skip)]
    pub bound: Option<IntervalReal>,
}

pub fn n_lower_bound(k: i64) -> Result<NBound> {
    if k <= 0 {
        return Err(Error::Domain(format!(
            "k = {k}: the bound concerns inner products k >= 1"
        )));
    }
    if k <= 2 {
        // A_2 and affine E_9 diagrams give pairs with k = 1 and k = 2.
        return Ok(NBound {
            k,
            d: None,
            positive: true,
            coefficient: None,
            bound: None,
        });
    }
    let d = (k as u64)
        .checked_mul(k as u64)
        .map(|x| x - 4)
        .ok_or_else(|| Error::Domain(format!("k = {k} overflows")))?;
    let tiny = Rational::new(1.into(), BigInt::from(1u128 << 100));
    let c = theorem_constant(&tiny);
    let bits = 80;
    let db = BigInt::from(d);
    let d_pow = IntervalReal::sqrt_of(&db, bits).scale(&Rational::from_integer(db.pow(3)));
    let bound = (&c * &d_pow).round_outward(bits + 120);
    Ok(NBound {
        k,
        d: Some(d),
        positive: true,
        coefficient: Some(c),
        bound: Some(bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_order_by_orbits_matches_degrees() {
        let g = e8_gram();
        assert_eq!(g.det(), BigInt::from(1));
        assert_eq!(weyl_group_order(&g).unwrap(), BigInt::from(W_E8_ORDER));
        assert_eq!(e8_degree_product(), W_E8_ORDER);
    }

    #[test]
    fn constant_enclosure() {
        let c = theorem_constant(&Rational::new(1.into(), BigInt::from(10u64).pow(40)));
        let lo = Rational::new(217.into(), BigInt::from(10u64).pow(21));
        let hi = Rational::new(219.into(), BigInt::from(10u64).pow(21));
        assert!(c.is_above(&lo) && c.is_below(&hi));
        assert!(c.is_above(&Rational::new(21.into(), BigInt::from(10u64).pow(20))));
    }

    #[test]
    fn bound_cases() {
        assert!(n_lower_bound(0).is_err());
        let b = n_lower_bound(1).unwrap();
        assert!(b.positive && b.bound.is_none());
        let b = n_lower_bound(3).unwrap();
        // 2.1e-19 · 5^{7/2} ≈ 5.87e-17.
        let floor = Rational::new(587.into(), BigInt::from(10u64).pow(19));
        assert!(b.bound.unwrap().is_above(&floor));
    }
}
