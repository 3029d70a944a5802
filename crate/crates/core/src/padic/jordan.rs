//! Jordan decomposition over Z_p by exact rational Schur complements.

use super::{unit_class, ConstituentType, PAdicConstituent, PAdicSymbol, Sign};
use crate::arith::{is_prime, Rational};
use crate::lattice::GramMatrix;
use crate::{Error, Result};
use num::{BigInt, Integer, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

fn valuation(x: &Rational, p: &BigInt) -> i64 {
    int_valuation(x.numer(), p) - int_valuation(x.denom(), p)
}

/// Square class of x / p^v for a rational x of exact valuation v.
fn unit_sign(x: &Rational, v: i64, p: u64) -> (Sign, i64) {
    let pb = BigInt::from(p);
    let scaled = if v >= 0 {
        x / Rational::from_integer(pb.pow(v as u32))
    } else {
        x * Rational::from_integer(pb.pow((-v) as u32))
    };
    // num·den has the same square class as num/den.
    let modulus = BigInt::from(if p == 2 { 8 } else { p });
    let residue = (scaled.numer() * scaled.denom()).mod_floor(&modulus);
    let r = residue.to_i64().unwrap_or(0);
    (unit_class(r as i128, p), r)
}

struct Block {
    scale: i64,
    dim: usize,
    sign: Sign,
    /// Unit residue mod 8 of a 1×1 block at p = 2; None for 2×2 blocks.
    trace: Option<i64>,
}

fn swap_index(a: &mut [Vec<Rational>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Removes the leading `k` indices, replacing the rest by the Schur complement.
fn schur(a: &[Vec<Rational>], k: usize) -> Vec<Vec<Rational>> {
    let n = a.len();
    let inv: Vec<Vec<Rational>> = if k == 1 {
        vec![vec![a[0][0].recip()]]
    } else {
        let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
        vec![
            vec![&a[1][1] / &det, -(&a[0][1] / &det)],
            vec![-(&a[1][0] / &det), &a[0][0] / &det],
        ]
    };
    (k..n)
        .map(|r| {
            (k..n)
                .map(|c| {
                    let mut v = a[r][c].clone();
                    for x in 0..k {
                        for y in 0..k {
                            v -= &a[r][x] * &inv[x][y] * &a[y][c];
                        }
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// The p-adic Jordan symbol of a nondegenerate Gram matrix.
///
/// At p = 2 a scale is type I when it contributes some 1×1 block; its subscript
/// is the sum of the unit parts of those blocks.
pub fn jordan_symbol(g: &GramMatrix, p: u64) -> Result<PAdicSymbol> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if g.det().is_zero() {
        return Err(Error::Degenerate);
    }
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<Rational>> = g
        .entries()
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut blocks = Vec::new();

    while !a.is_empty() {
        let n = a.len();
        let v = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .map(|(i, j)| valuation(&a[i][j], &pb))
            .min()
            .ok_or(Error::Degenerate)?;
        let diag = (0..n).find(|&i| !a[i][i].is_zero() && valuation(&a[i][i], &pb) == v);
        let pivot = match diag {
            Some(i) => Some(i),
            None => {
                let (i, j) = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero() && valuation(&a[i][j], &pb) == v)
                    .ok_or(Error::Degenerate)?;
                if p == 2 {
                    swap_index(&mut a, 0, i);
                    swap_index(&mut a, 1, j);
                    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[0][1];
                    let (sign, _) = unit_sign(&det, 2 * v, 2);
                    blocks.push(Block {
                        scale: v,
                        dim: 2,
                        sign,
                        trace: None,
                    });
                    a = schur(&a, 2);
                    None
                } else {
                    // e_i + e_j has norm of valuation exactly v.
                    for c in 0..n {
                        let add = a[j][c].clone();
                        a[i][c] += add;
                    }
                    for r in 0..n {
                        let add = a[r][j].clone();
                        a[r][i] += add;
                    }
                    Some(i)
                }
            }
        };
        if let Some(i) = pivot {
            swap_index(&mut a, 0, i);
            let (sign, residue) = unit_sign(&a[0][0], v, p);
            blocks.push(Block {
                scale: v,
                dim: 1,
                sign,
                trace: (p == 2).then_some(residue),
            });
            a = schur(&a, 1);
        }
    }

    let mut by_scale: BTreeMap<i64, (usize, Sign, bool, i64)> = BTreeMap::new();
    for b in blocks {
        let e = by_scale.entry(b.scale).or_insert((0, Sign::Plus, false, 0));
        e.0 += b.dim;
        e.1 = e.1.times(b.sign);
        if let Some(t) = b.trace {
            e.2 = true;
            e.3 += t;
        }
    }
    let constituents = by_scale
        .into_iter()
        .map(|(scale, (dim, sign, odd, trace))| {
            let scale = scale as i32;
            if p != 2 {
                PAdicConstituent::odd(scale, dim, sign)
            } else if odd {
                PAdicConstituent::type_one(scale, dim, sign, trace)
            } else {
                PAdicConstituent {
                    scale,
                    dim,
                    sign,
                    kind: ConstituentType::II,
                    subscript: None,
                }
            }
        })
        .collect();
    PAdicSymbol::new(p, constituents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{oddity, p_excess};

    fn g(rows: &[&[i64]]) -> GramMatrix {
        GramMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn pair_span_three() {
        let l = GramMatrix::pair_span(3);
        assert_eq!(jordan_symbol(&l, 2).unwrap().to_string(), "1^{-2}_II");
        assert_eq!(jordan_symbol(&l, 5).unwrap().to_string(), "1^{-1} 5^{-1}");
    }

    #[test]
    fn pair_span_four() {
        let l = GramMatrix::pair_span(4);
        assert_eq!(jordan_symbol(&l, 2).unwrap().to_string(), "2^{-2}_6");
        // (-8|3) = +1 on the scale-3 constituent.
        assert_eq!(jordan_symbol(&l, 3).unwrap().to_string(), "1^{-1} 3^{+1}");
    }

    #[test]
    fn pair_span_six() {
        let s = jordan_symbol(&GramMatrix::pair_span(6), 2).unwrap();
        assert_eq!(s.to_string(), "2^{+1}_1 (2^4)^{+1}_7");
    }

    #[test]
    fn single_lines() {
        let s = jordan_symbol(&GramMatrix::diagonal(&[2]), 2).unwrap();
        assert_eq!(s.to_string(), "2^{+1}_1");
        let s = jordan_symbol(&GramMatrix::diagonal(&[6]), 2).unwrap();
        assert_eq!(s.to_string(), "2^{-1}_3");
        assert_eq!(oddity(&s).unwrap(), 7);
        let s = jordan_symbol(&GramMatrix::diagonal(&[3]), 3).unwrap();
        assert_eq!(p_excess(&s).unwrap(), 2);
    }

    #[test]
    fn hyperbolic_plane_is_even_unimodular() {
        let s = jordan_symbol(&g(&[&[0, 1], &[1, 0]]), 2).unwrap();
        assert_eq!(s.to_string(), "1^{+2}_II");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            jordan_symbol(&g(&[&[1, 1], &[1, 1]]), 2),
            Err(Error::Degenerate)
        ));
        assert!(matches!(
            jordan_symbol(&GramMatrix::pair_span(3), 9),
            Err(Error::Domain(_))
        ));
    }
}
