//! Discriminant groups K*/K with their bilinear and quadratic forms.

use super::intmat::{self, BigMat};
use super::GramMatrix;
use crate::{Error, Result};
use num::rational::Ratio;
use num::{BigInt, Integer, One, ToPrimitive, Zero};
use std::collections::{BTreeSet, VecDeque};

/// Element of Q/Z or Q/2Z, stored reduced into [0, modulus).
pub type QZ = Ratio<i128>;

/// Elements are coefficient vectors on the generators, reduced mod the orders.
pub type DiscElement = Vec<u64>;

#[derive(Debug, Clone)]
pub struct DiscForm {
    source: GramMatrix,
    orders: Vec<u64>,
    /// Integer vectors w_i; the generator is w_i / orders[i] in K*.
    lifts: Vec<Vec<BigInt>>,
    /// Rows of the Smith transform that read off coordinates.
    coord_rows: BigMat,
    bilinear: Vec<Vec<QZ>>,
    quadratic: Option<Vec<QZ>>,
}

fn reduce_mod(x: QZ, modulus: i128) -> QZ {
    let m = QZ::from_integer(modulus);

    x - (x / m).floor() * m
}

fn big_ratio(num: &BigInt, den: &BigInt, modulus: i128) -> Result<QZ> {
    // Reduce the numerator first so the value fits in i128.
    let n = num.mod_floor(&(den * modulus));
    let n = n
        .to_i128()
        .ok_or_else(|| Error::Invalid("discriminant value overflow".into()))?;
    let d = den
        .to_i128()
        .ok_or_else(|| Error::Invalid("discriminant value overflow".into()))?;
    Ok(reduce_mod(QZ::new(n, d), modulus))
}

pub fn discriminant_form(g: &GramMatrix) -> Result<DiscForm> {
    let big = g.to_big();
    let snf = intmat::smith_normal_form(&big);
    if snf.rank() < g.dim() {
        return Err(Error::Degenerate);
    }
    let mut orders = Vec::new();
    let mut lifts = Vec::new();
    let mut coord_rows = Vec::new();
    for (i, d) in snf.diagonal.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        orders.push(
            d.to_u64()
                .ok_or_else(|| Error::Unsupported(format!("invariant factor {d} too large")))?,
        );
        lifts.push(snf.v.iter().map(|row| row[i].clone()).collect::<Vec<_>>());
        coord_rows.push(snf.u[i].clone());
    }
    let r = orders.len();
    let even = g.is_even();
    let mut bilinear = vec![vec![QZ::zero(); r]; r];
    let mut quadratic = even.then(|| vec![QZ::zero(); r]);
    for i in 0..r {
        for j in i..r {
            let ip = g.dot_big(&lifts[i], &lifts[j]);
            let den = BigInt::from(orders[i]) * orders[j];
            let b = big_ratio(&ip, &den, 1)?;
            bilinear[i][j] = b;
            bilinear[j][i] = b;
            if i == j {
                if let Some(q) = quadratic.as_mut() {
                    q[i] = big_ratio(&ip, &den, 2)?;
                }
            }
        }
    }
    Ok(DiscForm {
        source: g.clone(),
        orders,
        lifts,
        coord_rows,
        bilinear,
        quadratic,
    })
}

impl DiscForm {
    pub fn source(&self) -> &GramMatrix {
        &self.source
    }

    /// Orders of the generators (the invariant factors above 1).
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Group order, equal to |det| of the source lattice.
    pub fn order(&self) -> BigInt {
        self.orders.iter().fold(BigInt::one(), |a, &d| a * d)
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn has_quadratic(&self) -> bool {
        self.quadratic.is_some()
    }

    pub fn generator_bilinear(&self, i: usize, j: usize) -> QZ {
        self.bilinear[i][j]
    }

    pub fn generator_quadratic(&self, i: usize) -> Option<QZ> {
        self.quadratic.as_ref().map(|q| q[i])
    }

    pub fn zero(&self) -> DiscElement {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> DiscElement {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> DiscElement {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn scale(&self, x: &[u64], c: i64) -> DiscElement {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| {
                let v = (a as i128 * c as i128).rem_euclid(d as i128);
                v as u64
            })
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| d / a.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn bilinear(&self, x: &[u64], y: &[u64]) -> QZ {
        let mut acc = QZ::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    acc += self.bilinear[i][j] * QZ::from_integer(xi as i128 * yj as i128);
                    acc = reduce_mod(acc, 1);
                }
            }
        }
        acc
    }

    /// q(x) in Q/2Z; `None` when the source lattice is odd.
    pub fn quadratic(&self, x: &[u64]) -> Option<QZ> {
        let q = self.quadratic.as_ref()?;
        let mut acc = QZ::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let xi = xi as i128;
            acc += q[i] * QZ::from_integer(xi * xi);
            for (j, &xj) in x.iter().enumerate().skip(i + 1) {
                acc += self.bilinear[i][j] * QZ::from_integer(2 * xi * xj as i128);
            }
            acc = reduce_mod(acc, 2);
        }
        Some(acc)
    }

    /// All group elements in mixed-radix order.
    pub fn elements(&self) -> Vec<DiscElement> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..d).map(move |c| {
                        let mut e = e.clone();
                        e.push(c);
                        e
                    })
                })
                .collect();
        }
        out
    }

    /// Class of a dual-lattice vector given in the source basis.
    pub fn class_of(&self, y: &[Ratio<BigInt>]) -> Result<DiscElement> {
        let g = self.source.to_big();
        let gy: Vec<Ratio<BigInt>> = g
            .iter()
            .map(|row| {
                row.iter().zip(y).fold(Ratio::zero(), |acc, (a, b)| {
                    acc + Ratio::from_integer(a.clone()) * b
                })
            })
            .collect();
        if gy.iter().any(|v| !v.is_integer()) {
            return Err(Error::Invalid("vector is not in the dual lattice".into()));
        }
        let gy: Vec<BigInt> = gy.into_iter().map(|v| v.to_integer()).collect();
        Ok(self.class_of_integral(&gy))
    }

    /// Class of y ∈ K* given G·y (an integer vector).
    fn class_of_integral(&self, gy: &[BigInt]) -> DiscElement {
        self.coord_rows
            .iter()
            .zip(&self.orders)
            .map(|(row, &d)| {
                let z = row
                    .iter()
                    .zip(gy)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
                z.mod_floor(&BigInt::from(d)).to_u64().unwrap_or(0)
            })
            .collect()
    }

    /// Representative of `x` in K* (source coordinates).
    pub fn lift(&self, x: &[u64]) -> Vec<Ratio<BigInt>> {
        let n = self.source.dim();
        let mut v = vec![Ratio::zero(); n];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let f = Ratio::new(BigInt::from(c), BigInt::from(self.orders[i]));
            for (t, w) in v.iter_mut().zip(&self.lifts[i]) {
                *t += &f * Ratio::from_integer(w.clone());
            }
        }
        v
    }
}

/// Homomorphism between discriminant groups, given by the images of generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscMorphism {
    pub images: Vec<DiscElement>,
}

impl DiscMorphism {
    pub fn identity(form: &DiscForm) -> Self {
        DiscMorphism {
            images: (0..form.rank()).map(|i| form.generator(i)).collect(),
        }
    }

    pub fn apply(&self, target: &DiscForm, x: &[u64]) -> DiscElement {
        let mut acc = target.zero();
        for (img, &c) in self.images.iter().zip(x) {
            if c != 0 {
                acc = target.add(&acc, &target.scale(img, c as i64));
            }
        }
        acc
    }

    /// self ∘ other, both endomorphisms of `form`.
    pub fn compose(&self, other: &DiscMorphism, form: &DiscForm) -> DiscMorphism {
        DiscMorphism {
            images: other.images.iter().map(|x| self.apply(form, x)).collect(),
        }
    }

    pub fn is_identity(&self, form: &DiscForm) -> bool {
        *self == DiscMorphism::identity(form)
    }

    pub fn is_negation(&self, form: &DiscForm) -> bool {
        (0..form.rank()).all(|i| self.images[i] == form.scale(&form.generator(i), -1))
    }

    fn is_injective(&self, source: &DiscForm, target: &DiscForm) -> bool {
        let zero = target.zero();
        source
            .elements()
            .iter()
            .skip(1)
            .all(|x| self.apply(target, x) != zero)
    }

    /// Whether this is a bijection scaling the forms by `sign` (±1).
    pub fn preserves_forms(&self, source: &DiscForm, target: &DiscForm, sign: i8) -> bool {
        let s = QZ::from_integer(sign as i128);
        if self.images.len() != source.rank() || source.order() != target.order() {
            return false;
        }
        for (i, x) in self.images.iter().enumerate() {
            if target.scale(x, source.orders[i] as i64) != target.zero() {
                return false;
            }
            if source.has_quadratic() && target.has_quadratic() {
                let want = reduce_mod(s * source.generator_quadratic(i).unwrap_or_default(), 2);
                if target.quadratic(x) != Some(want) {
                    return false;
                }
            }
            for j in 0..=i {
                let want = reduce_mod(s * source.bilinear[i][j], 1);
                if target.bilinear(x, &self.images[j]) != want {
                    return false;
                }
            }
        }
        self.is_injective(source, target)
    }
}

fn search(source: &DiscForm, target: &DiscForm, sign: i8) -> Vec<DiscMorphism> {
    if source.order() != target.order() {
        return Vec::new();
    }
    let s = QZ::from_integer(sign as i128);
    let use_q = source.has_quadratic() && target.has_quadratic();
    let elements = target.elements();
    let candidates: Vec<Vec<&DiscElement>> = (0..source.rank())
        .map(|i| {
            let d = source.orders[i];
            let want_q = source.generator_quadratic(i).map(|q| reduce_mod(s * q, 2));
            let want_b = reduce_mod(s * source.bilinear[i][i], 1);
            elements
                .iter()
                .filter(|x| target.element_order(x) == d)
                .filter(|x| {
                    if use_q {
                        target.quadratic(x) == want_q
                    } else {
                        target.bilinear(x, x) == want_b
                    }
                })
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<DiscElement> = Vec::new();
    extend(source, target, s, &candidates, &mut chosen, &mut out);
    out
}

fn extend(
    source: &DiscForm,
    target: &DiscForm,
    s: QZ,
    candidates: &[Vec<&DiscElement>],
    chosen: &mut Vec<DiscElement>,
    out: &mut Vec<DiscMorphism>,
) {
    let i = chosen.len();
    if i == candidates.len() {
        let m = DiscMorphism {
            images: chosen.clone(),
        };
        if m.is_injective(source, target) {
            out.push(m);
        }
        return;
    }
    for x in &candidates[i] {
        let ok = (0..i)
            .all(|j| target.bilinear(x, &chosen[j]) == reduce_mod(s * source.bilinear[i][j], 1));
        if ok {
            chosen.push((*x).clone());
            extend(source, target, s, candidates, chosen, out);
            chosen.pop();
        }
    }
}

/// All anti-isometries Δ(source) → Δ(target), i.e. bijections with q_T(φx) = −q_S(x).
pub fn anti_isometries(source: &DiscForm, target: &DiscForm) -> Vec<DiscMorphism> {
    search(source, target, -1)
}

/// The orthogonal group of a discriminant form.
pub fn isometries(form: &DiscForm) -> Vec<DiscMorphism> {
    search(form, form, 1)
}

/// Automorphism of Δ(g) induced by an isometry `iso` of g (columns are images).
pub fn o_action_on_disc(g: &GramMatrix, iso: &[Vec<i64>]) -> Result<DiscMorphism> {
    if !g.is_isometry(iso) {
        return Err(Error::NotIsometry);
    }
    let form = discriminant_form(g)?;
    let m = intmat::from_i64(iso);
    let big = g.to_big();
    let images = form
        .lifts
        .iter()
        .zip(&form.orders)
        .map(|(w, &d)| {
            let gmw = intmat::mat_vec(&big, &intmat::mat_vec(&m, w));
            let d = BigInt::from(d);
            let gy: Vec<BigInt> = gmw.iter().map(|x| x / &d).collect();
            form.class_of_integral(&gy)
        })
        .collect();
    Ok(DiscMorphism { images })
}

/// Closure of a set of automorphisms under composition, sorted.
pub fn automorphism_closure(form: &DiscForm, gens: &[DiscMorphism]) -> Vec<DiscMorphism> {
    let id = DiscMorphism::identity(form);
    let mut seen: BTreeSet<DiscMorphism> = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let c = g.compose(&a, form);
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    seen.into_iter().collect()
}

/// Gram matrix of the overlattice of L ⊕ K cut out by the graph of `phi`.
///
/// `phi` maps Δ(L) to Δ(K) and must negate the quadratic forms; the result
/// is even with determinant det L · det K / |Δ(L)|².
pub fn glue_lattice(l: &GramMatrix, k: &GramMatrix, phi: &DiscMorphism) -> Result<GramMatrix> {
    if !l.is_even() || !k.is_even() {
        return Err(Error::Invalid("gluing requires even lattices".into()));
    }
    let a = discriminant_form(l)?;
    let b = discriminant_form(k)?;
    if !phi.preserves_forms(&a, &b, -1) {
        return Err(Error::NotAntiIsometry(
            "map does not negate the discriminant quadratic forms bijectively".into(),
        ));
    }
    let (nl, nk) = (l.dim(), k.dim());
    let n = nl + nk;
    let denom = a
        .orders
        .iter()
        .chain(&b.orders)
        .fold(1u64, |acc, d| acc.lcm(d));
    let scale = BigInt::from(denom);
    let mut rows: BigMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        scale.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    for i in 0..a.rank() {
        let x = a.generator(i);
        let lifted: Vec<Ratio<BigInt>> = a
            .lift(&x)
            .into_iter()
            .chain(b.lift(&phi.apply(&b, &x)))
            .collect();
        rows.push(
            lifted
                .iter()
                .map(|v| (v * Ratio::from_integer(scale.clone())).to_integer())
                .collect(),
        );
    }
    let basis = intmat::hermite_rows(&rows);
    if basis.len() != n {
        return Err(Error::Invalid("glued lattice has the wrong rank".into()));
    }
    let sum = l.direct_sum(k);
    let d2 = &scale * &scale;
    let mut entries = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let ip = sum.dot_big(&basis[i], &basis[j]);
            if !(&ip % &d2).is_zero() {
                return Err(Error::Invalid("glued lattice is not integral".into()));
            }
            let v = (ip / &d2)
                .to_i64()
                .ok_or_else(|| Error::Invalid("glued Gram entry overflows i64".into()))?;
            entries[i][j] = v;
            entries[j][i] = v;
        }
    }
    let out = GramMatrix::new(entries)?;
    if !out.is_even() {
        return Err(Error::NotAntiIsometry("glued lattice is odd".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    fn q(n: i128, d: i128) -> QZ {
        QZ::new(n, d)
    }

    #[test]
    fn norm_two_line() {
        let f = discriminant_form(&GramMatrix::diagonal(&[2])).unwrap();
        assert_eq!(f.orders(), &[2]);
        assert_eq!(f.quadratic(&[1]), Some(q(1, 2)));
        assert_eq!(f.bilinear(&[1], &[1]), q(1, 2));
    }

    #[test]
    fn pair_span_three_is_cyclic_five() {
        let f = discriminant_form(&GramMatrix::pair_span(3)).unwrap();
        assert_eq!(f.orders(), &[5]);
        assert_eq!(f.order(), BigInt::from(5));
        // Dual norms are -2c²/5, so a generator has q = 8/5 or 2/5.
        let qv = f.quadratic(&[1]).unwrap();
        assert!(qv == q(8, 5) || qv == q(2, 5));
        assert_eq!(isometries(&f).len(), 2);
    }

    #[test]
    fn unimodular_is_trivial() {
        let f = discriminant_form(&GramMatrix::new(vec![vec![0, 1], vec![1, 0]]).unwrap()).unwrap();
        assert!(f.is_trivial());
        assert_eq!(f.elements().len(), 1);
    }

    #[test]
    fn degenerate_rejected() {
        let g = GramMatrix::new(vec![vec![2, 2], vec![2, 2]]).unwrap();
        assert!(matches!(discriminant_form(&g), Err(Error::Degenerate)));
    }

    #[test]
    fn class_of_lift_round_trips() {
        let f = discriminant_form(&GramMatrix::pair_span(6)).unwrap();
        for x in f.elements() {
            assert_eq!(f.class_of(&f.lift(&x)).unwrap(), x);
        }
    }

    #[test]
    fn opposite_lines_glue_to_hyperbolic_plane() {
        let a = GramMatrix::diagonal(&[2]);
        let b = GramMatrix::diagonal(&[-2]);
        let fa = discriminant_form(&a).unwrap();
        let fb = discriminant_form(&b).unwrap();
        let maps = anti_isometries(&fa, &fb);
        assert_eq!(maps.len(), 1);
        let glued = glue_lattice(&a, &b, &maps[0]).unwrap();
        assert_eq!(glued.det(), BigInt::from(-1));
        assert!(glued.is_even());
        // Same-sign lines cannot glue: 1/2 + 1/2 is not 0 mod 2.
        assert!(anti_isometries(&fa, &fa).is_empty());
    }

    #[test]
    fn pair_span_glues_with_its_negation() {
        let l = GramMatrix::pair_span(3);
        let k = l.negated();
        let fa = discriminant_form(&l).unwrap();
        let fb = discriminant_form(&k).unwrap();
        let maps = anti_isometries(&fa, &fb);
        assert_eq!(maps.len(), 2);
        for m in &maps {
            let glued = glue_lattice(&l, &k, m).unwrap();
            let ds = glued.det_signature();
            assert_eq!(ds.det.abs(), BigInt::one());
            assert_eq!(ds.sig, (2, 2));
            assert!(glued.is_even());
        }
    }

    #[test]
    fn negation_acts_as_minus_one() {
        let g = GramMatrix::pair_span(5);
        let neg = vec![vec![-1, 0], vec![0, -1]];
        let f = discriminant_form(&g).unwrap();
        let m = o_action_on_disc(&g, &neg).unwrap();
        assert!(m.is_negation(&f));
        assert!(matches!(
            o_action_on_disc(&g, &[vec![1, 1], vec![0, 1]]),
            Err(Error::NotIsometry)
        ));
    }

    #[test]
    fn quadratic_polarizes_on_generators() {
        for k in 3..20 {
            let f = discriminant_form(&GramMatrix::pair_span(k)).unwrap();
            for i in 0..f.rank() {
                for j in 0..f.rank() {
                    let (x, y) = (f.generator(i), f.generator(j));
                    let lhs = f.quadratic(&f.add(&x, &y)).unwrap()
                        - f.quadratic(&x).unwrap()
                        - f.quadratic(&y).unwrap();
                    let rhs = f.bilinear(&x, &y) * QZ::from_integer(2);
                    assert_eq!(reduce_mod(lhs - rhs, 2), QZ::zero());
                }
            }
        }
    }
}
