//! Integer lattices given by Gram matrices, their sublattices and discriminant forms.

mod disc;
pub mod intmat;

pub use disc::{
    anti_isometries, automorphism_closure, discriminant_form, glue_lattice, isometries,
    o_action_on_disc, DiscForm, DiscMorphism, QZ,
};
pub use intmat::{hermite_rows, smith_normal_form, BigMat, Snf};

use crate::arith::Rational;
use crate::{Error, Result};
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Symmetric integer Gram matrix. Serialized as `{"n": .., "gram": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGram", into = "RawGram")]
pub struct GramMatrix {
    entries: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawGram {
    n: usize,
    gram: Vec<Vec<i64>>,
}

impl TryFrom<RawGram> for GramMatrix {
    type Error = Error;

    fn try_from(raw: RawGram) -> Result<Self> {
        if raw.gram.len() != raw.n {
            return Err(Error::Invalid(format!(
                "\"n\" is {} but the matrix has {} rows",
                raw.n,
                raw.gram.len()
            )));
        }
        GramMatrix::new(raw.gram)
    }
}

impl From<GramMatrix> for RawGram {
    fn from(g: GramMatrix) -> Self {
        RawGram {
            n: g.dim(),
            gram: g.entries,
        }
    }
}

/// Determinant and signature (positive, negative) of a Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetSignature {
    pub det: BigInt,
    pub sig: (usize, usize),
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Invalid(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    /// The rank-2 lattice spanned by two norm-2 vectors with inner product `k`.
    pub fn pair_span(k: i64) -> Self {
        GramMatrix {
            entries: vec![vec![2, k], vec![k, 2]],
        }
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let n = values.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { values[i] } else { 0 }).collect())
            .collect();
        GramMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn is_even(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn to_big(&self) -> BigMat {
        intmat::from_i64(&self.entries)
    }

    pub fn det(&self) -> BigInt {
        intmat::determinant(&self.to_big())
    }

    pub fn signature(&self) -> (usize, usize) {
        signature_of(&self.entries)
    }

    pub fn det_signature(&self) -> DetSignature {
        DetSignature {
            det: self.det(),
            sig: self.signature(),
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature() == (self.dim(), 0)
    }

    pub fn negated(&self) -> Self {
        GramMatrix {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &GramMatrix) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut entries = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            entries[i][..a].copy_from_slice(&self.entries[i]);
        }
        for i in 0..b {
            entries[a + i][a..].copy_from_slice(&other.entries[i]);
        }
        GramMatrix { entries }
    }

    /// Inner product of two integer coordinate vectors.
    pub fn dot(&self, x: &[i64], y: &[i64]) -> i128 {
        let mut acc = 0i128;
        for (i, row) in self.entries.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            let gy: i128 = row
                .iter()
                .zip(y)
                .map(|(&g, &v)| g as i128 * v as i128)
                .sum();
            acc += x[i] as i128 * gy;
        }
        acc
    }

    pub fn dot_big(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gy = intmat::mat_vec(&self.to_big(), y);
        x.iter()
            .zip(&gy)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm(&self, x: &[i64]) -> i128 {
        self.dot(x, x)
    }

    /// Gram matrix of the vectors `basis` (ambient coordinates).
    pub fn restrict(&self, basis: &[Vec<i64>]) -> Result<GramMatrix> {
        let m = basis.len();
        let mut entries = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in i..m {
                let v = self.dot(&basis[i], &basis[j]);
                let v = i64::try_from(v)
                    .map_err(|_| Error::Invalid("inner product overflows i64".into()))?;
                entries[i][j] = v;
                entries[j][i] = v;
            }
        }
        Ok(GramMatrix { entries })
    }

    /// Whether `m` (columns are images of basis vectors) satisfies mᵀ g m = g.
    pub fn is_isometry(&self, m: &[Vec<i64>]) -> bool {
        let n = self.dim();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return false;
        }
        let cols: Vec<Vec<i64>> = (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect();
        (0..n).all(|i| (0..n).all(|j| self.dot(&cols[i], &cols[j]) == self.entries[i][j] as i128))
    }
}

/// Signature by exact congruence diagonalization over the rationals.
fn signature_of(g: &[Vec<i64>]) -> (usize, usize) {
    let n = g.len();
    let mut a: Vec<Vec<Rational>> = g
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let (mut pos, mut neg) = (0, 0);
    for t in 0..n {
        if let Some(i) = (t..n).find(|&i| !a[i][i].is_zero()) {
            a.swap(t, i);
            for row in a.iter_mut() {
                row.swap(t, i);
            }
        } else {
            let Some((i, j)) = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            else {
                break;
            };
            // Diagonal is zero here, so e_i + e_j has norm 2·a_ij ≠ 0.
            for c in 0..n {
                let add = a[j][c].clone();
                a[i][c] += add;
            }
            for r in 0..n {
                let add = a[r][j].clone();
                a[r][i] += add;
            }
            a.swap(t, i);
            for row in a.iter_mut() {
                row.swap(t, i);
            }
        }
        let p = a[t][t].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in t + 1..n {
            if a[i][t].is_zero() {
                continue;
            }
            let f = &a[i][t] / &p;
            for c in t..n {
                let sub = &f * &a[t][c];
                a[i][c] -= sub;
            }
            for r in t..n {
                let sub = &f * &a[r][t];
                a[r][i] -= sub;
            }
        }
    }
    (pos, neg)
}

pub fn det_signature(g: &GramMatrix) -> DetSignature {
    g.det_signature()
}

/// A sublattice of an ambient lattice, given by integer basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub ambient: GramMatrix,
    pub basis: Vec<Vec<i64>>,
}

impl Embedding {
    pub fn new(ambient: GramMatrix, basis: Vec<Vec<i64>>) -> Result<Self> {
        let n = ambient.dim();
        if let Some(v) = basis.iter().find(|v| v.len() != n) {
            return Err(Error::Invalid(format!(
                "basis vector of length {} in a rank-{n} lattice",
                v.len()
            )));
        }
        Ok(Embedding { ambient, basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> Result<GramMatrix> {
        self.ambient.restrict(&self.basis)
    }

    /// Basis as the columns of an n×m BigInt matrix.
    fn basis_matrix(&self) -> BigMat {
        let n = self.ambient.dim();
        (0..n)
            .map(|i| self.basis.iter().map(|v| BigInt::from(v[i])).collect())
            .collect()
    }

    /// Index of the sublattice in its saturation.
    pub fn saturation_index(&self) -> BigInt {
        if self.basis.is_empty() {
            return BigInt::one();
        }
        let snf = smith_normal_form(&self.basis_matrix());
        snf.diagonal.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    fn check_nondegenerate(&self) -> Result<()> {
        let snf = smith_normal_form(&self.basis_matrix());
        if snf.rank() < self.rank() {
            return Err(Error::Invalid(
                "basis vectors are linearly dependent".into(),
            ));
        }
        if self.gram()?.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(())
    }
}

fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Invalid("coordinate overflows i64".into()))
        })
        .collect()
}

/// The saturation (L ⊗ Q) ∩ ambient of a nondegenerate sublattice.
///
/// Inputs that are already saturated come back unchanged.
pub fn saturate(e: &Embedding) -> Result<Embedding> {
    e.check_nondegenerate()?;
    if e.saturation_index().is_one() {
        return Ok(e.clone());
    }
    let n = e.ambient.dim();
    // Vectors y with yᵀB = 0 cut out the rational span; their common kernel is the saturation.
    let bt = intmat::transpose(&e.basis_matrix());
    let left = intmat::kernel(&bt, n);
    let sat = if left.is_empty() {
        intmat::identity(n)
    } else {
        intmat::kernel(&left, n)
    };
    let basis = hermite_rows(&sat)
        .iter()
        .map(|v| to_i64_vec(v))
        .collect::<Result<Vec<_>>>()?;
    Embedding::new(e.ambient.clone(), basis)
}

/// Basis of the orthogonal complement of a saturated, nondegenerate sublattice.
pub fn orthogonal_complement_basis(e: &Embedding) -> Result<Embedding> {
    e.check_nondegenerate()?;
    let index = e.saturation_index();
    if !index.is_one() {
        return Err(Error::NotSaturated(index.to_string()));
    }
    let n = e.ambient.dim();
    let g = e.ambient.to_big();
    let bt = intmat::transpose(&e.basis_matrix());
    let mut kernel = if bt.is_empty() {
        intmat::identity(n)
    } else {
        intmat::kernel(&intmat::mat_mul(&bt, &g), n)
    };
    let complement_gram: BigMat = kernel
        .iter()
        .map(|x| kernel.iter().map(|y| e.ambient.dot_big(x, y)).collect())
        .collect();
    if is_positive_definite_big(&complement_gram) {
        size_reduce(&e.ambient, &mut kernel);
    }
    let basis = kernel
        .iter()
        .map(|v| to_i64_vec(v))
        .collect::<Result<Vec<_>>>()?;
    Embedding::new(e.ambient.clone(), basis)
}

pub fn orthogonal_complement(e: &Embedding) -> Result<GramMatrix> {
    orthogonal_complement_basis(e)?.gram()
}

fn is_positive_definite_big(g: &BigMat) -> bool {
    // Leading principal minors.
    (1..=g.len()).all(|k| {
        let minor: BigMat = g[..k].iter().map(|r| r[..k].to_vec()).collect();
        intmat::determinant(&minor).is_positive()
    })
}

/// Pairwise size reduction of a positive-definite basis: repeatedly replace
/// b_i by b_i − q b_j while that strictly shortens b_i. Sorted by norm at the end.
fn size_reduce(g: &GramMatrix, basis: &mut [Vec<BigInt>]) {
    let m = basis.len();
    loop {
        let mut changed = false;
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let gij = g.dot_big(&basis[i], &basis[j]);
                let gjj = g.dot_big(&basis[j], &basis[j]);
                if (&gij * BigInt::from(2)).abs() <= gjj {
                    continue;
                }
                let q = round_div(&gij, &gjj);
                let bj = basis[j].clone();
                for (x, y) in basis[i].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by_cached_key(|v| (g.dot_big(v, v), v.clone()));
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    use num::Integer;
    (a * BigInt::from(2) + b).div_floor(&(b * BigInt::from(2)))
}
