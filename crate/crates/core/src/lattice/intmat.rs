//! Dense integer matrices over BigInt: Smith and Hermite normal forms, kernels, determinants.

use num::{BigInt, Integer, One, Signed, Zero};

pub type BigMat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> BigMat {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> BigMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn transpose(m: &BigMat) -> BigMat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &BigMat, b: &BigMat) -> BigMat {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &BigMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

/// Result of a Smith normal form computation: `u * m * v` is diagonal.
#[derive(Debug, Clone)]
pub struct Snf {
    /// Invariant factors d_1 | d_2 | ... (length min(rows, cols), zeros last).
    pub diagonal: Vec<BigInt>,
    pub u: BigMat,
    pub v: BigMat,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Coefficients (x, y, s, t) of a unimodular 2×2 step sending (a, b) to (g, 0).
///
/// When a divides b this is plain subtraction, so a clean pivot is never disturbed.
fn elimination(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    if (b % a).is_zero() {
        return [BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()];
    }
    let (g, x, y) = ext_gcd(a, b);
    [x, y, -(b / &g), a / &g]
}

/// Extended gcd with g >= 0: x*a + y*b = g.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Replaces rows (i, j) of `m` by (x r_i + y r_j, s r_i + t r_j).
fn combine_rows(m: &mut BigMat, i: usize, j: usize, coeffs: [&BigInt; 4]) {
    let [x, y, s, t] = coeffs;
    for c in 0..m[i].len() {
        let a = m[i][c].clone();
        let b = m[j][c].clone();
        m[i][c] = x * &a + y * &b;
        m[j][c] = s * &a + t * &b;
    }
}

fn combine_cols(m: &mut BigMat, i: usize, j: usize, coeffs: [&BigInt; 4]) {
    let [x, y, s, t] = coeffs;
    for row in m.iter_mut() {
        let a = row[i].clone();
        let b = row[j].clone();
        row[i] = x * &a + y * &b;
        row[j] = s * &a + t * &b;
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &BigMat) -> Snf {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let size = rows.min(cols);

    for t in 0..size {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let [x, y, s, tt] = elimination(&a[t][t], &a[i][t]);
                combine_rows(&mut a, t, i, [&x, &y, &s, &tt]);
                combine_rows(&mut u, t, i, [&x, &y, &s, &tt]);
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                clean = false;
                let [x, y, s, tt] = elimination(&a[t][t], &a[t][j]);
                combine_cols(&mut a, t, j, [&x, &y, &s, &tt]);
                combine_cols(&mut v, t, j, [&x, &y, &s, &tt]);
            }
            if !clean && (t + 1..rows).any(|i| !a[i][t].is_zero()) {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and go again.
            let pivot = a[t][t].clone();
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    combine_rows(&mut a, t, i, [&one, &one, &zero, &one]);
                    combine_rows(&mut u, t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for c in 0..cols {
                a[t][c] = -&a[t][c];
            }
            for c in 0..rows {
                u[t][c] = -&u[t][c];
            }
        }
    }

    let diagonal = (0..size).map(|i| a[i][i].clone()).collect();
    Snf { diagonal, u, v }
}

/// Integer basis (as vectors) of the right kernel {x : m x = 0}.
pub fn kernel(m: &BigMat, cols: usize) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return identity(cols);
    }
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let basis: Vec<Vec<BigInt>> = (rank..cols)
        .map(|j| snf.v.iter().map(|row| row[j].clone()).collect())
        .collect();
    hermite_rows(&basis)
}

/// Row-style Hermite normal form: a basis of the Z-span of `rows`.
///
/// Pivots are positive and entries above each pivot are reduced into [0, pivot).
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut a: BigMat = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            if a[r][c].is_zero() {
                a.swap(r, i);
                continue;
            }
            let [x, y, s, t] = elimination(&a[r][c], &a[i][c]);
            combine_rows(&mut a, r, i, [&x, &y, &s, &t]);
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                for j in 0..cols {
                    let delta = &q * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &BigMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = val;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> BigMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn check_snf(m: &BigMat) -> Snf {
        let s = smith_normal_form(m);
        let prod = mat_mul(&mat_mul(&s.u, m), &s.v);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &s.diagonal[i]);
                } else {
                    assert!(x.is_zero(), "off-diagonal entry {x} at ({i},{j})");
                }
            }
        }
        assert_eq!(determinant(&s.u).abs(), BigInt::one());
        assert_eq!(determinant(&s.v).abs(), BigInt::one());
        for w in s.diagonal.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn named_smith_forms() {
        let s = check_snf(&big(&[&[2, 3], &[3, 2]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(5)]);
        let s = check_snf(&big(&[&[2, 0], &[0, 2]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(2)]);
        let s = check_snf(&identity(4));
        assert!(s.diagonal.iter().all(|d| d.is_one()));
        let s = check_snf(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            s.diagonal,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn rectangular_and_singular() {
        let s = check_snf(&big(&[&[2, 4, 6], &[1, 2, 3]]));
        assert_eq!(s.rank(), 1);
        let k = kernel(&big(&[&[1, 1, 1]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(v.iter().fold(BigInt::zero(), |a, x| a + x).is_zero());
        }
    }

    #[test]
    fn hermite_basis_of_span() {
        let h = hermite_rows(&big(&[&[4, 0], &[6, 2], &[0, 4]]));
        assert_eq!(h, big(&[&[2, 2], &[0, 4]]));
        let h = hermite_rows(&big(&[&[0, -3]]));
        assert_eq!(h, big(&[&[0, 3]]));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&big(&[&[2, 3], &[3, 2]])), BigInt::from(-5));
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&big(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    fn small_matrix() -> impl Strategy<Value = BigMat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..10, c), r)
                .prop_map(|rows| from_i64(&rows))
        })
    }

    proptest! {
        #[test]
        fn snf_invariants_hold(m in small_matrix()) {
            check_snf(&m);
        }

        #[test]
        fn snf_product_matches_determinant(m in proptest::collection::vec(proptest::collection::vec(-9i64..10, 4), 4)) {
            let m = from_i64(&m);
            let s = smith_normal_form(&m);
            let prod = s.diagonal.iter().fold(BigInt::one(), |a, d| a * d);
            prop_assert_eq!(prod, determinant(&m).abs());
        }
    }
}
