//! Masses of rank-8 positive-definite genera by local factors, and the closed
//! form for the complement genus of the pair span.
//!
//! A mass is carried as coeff · d^{7/2} · ζ_d(4) / π⁴ with coeff rational, so
//! symbolic comparisons are exact and numerics only happen at the end.

use crate::arith::{
    d_profile, factorize, kronecker, pi_fourth, zeta_d, E2Case, IntervalReal, Rational,
};
use crate::genus::GenusSymbol;
use crate::padic::{compartments, odd_prime_species, species, PAdicSymbol, Sign, Species};
use crate::{Error, Result};
use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn p_pow(p: u64, e: i64) -> Rational {
    let base = Rational::from_integer(p.into());
    if e >= 0 {
        num::pow(base, e as usize)
    } else {
        num::pow(base.recip(), (-e) as usize)
    }
}

/// Standard rank-8 local factor at p | 2d: 1 / (2(1−p⁻²)(1−p⁻⁴)(1−p⁻⁶)).
pub fn std_p(p: u64) -> Rational {
    let prod = (1..=3).fold(Rational::one(), |acc, i| {
        acc * (Rational::one() - p_pow(p, -2 * i))
    });
    (prod * q(2, 1)).recip()
}

/// Diagonal factor M_p of a constituent of the given species.
pub fn diagonal_factor(s: Species, p: u64) -> Result<Rational> {
    let two = q(2, 1);
    match s.sign {
        None => {
            let half = (s.n as i64 - 1) / 2;
            let prod = (1..=half).fold(Rational::one(), |acc, i| {
                acc * (Rational::one() - p_pow(p, -2 * i))
            });
            Ok((prod * two).recip())
        }
        Some(sign) => {
            let half = s.n as i64 / 2;
            if half == 0 {
                return match sign {
                    Sign::Plus => Ok(Rational::one()),
                    Sign::Minus => Err(Error::Unsupported("species 0-".into())),
                };
            }
            let lead = match sign {
                Sign::Plus => Rational::one() - p_pow(p, -half),
                Sign::Minus => Rational::one() + p_pow(p, -half),
            };
            let prod = (1..half).fold(lead, |acc, i| acc * (Rational::one() - p_pow(p, -2 * i)));
            Ok((prod * two).recip())
        }
    }
}

/// rational · p^{half_exponent / 2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRatio {
    pub p: u64,
    pub rational: Rational,
    pub half_exponent: i64,
}

impl LocalRatio {
    /// Rewrites the value as rational' · p^{target/2}; needs matching parity.
    pub fn normalized_to(&self, target_half_exponent: i64) -> Result<Rational> {
        let diff = self.half_exponent - target_half_exponent;
        if diff % 2 != 0 {
            return Err(Error::Unsupported(format!(
                "p = {}: power p^({}/2) is not a rational multiple of p^({}/2)",
                self.p, self.half_exponent, target_half_exponent
            )));
        }
        Ok(&self.rational * p_pow(self.p, diff / 2))
    }
}

/// ∏_{i<j} (q_j/q_i)^{n_i n_j / 2} over the constituents.
pub fn cross_term(s: &PAdicSymbol) -> LocalRatio {
    let cs = &s.constituents;
    let mut h = 0i64;
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            h += (cs[j].scale - cs[i].scale) as i64 * (cs[i].dim * cs[j].dim) as i64;
        }
    }
    LocalRatio {
        p: s.p,
        rational: Rational::one(),
        half_exponent: h,
    }
}

/// m_p / std_p for a rank-8 local symbol.
pub fn local_mass_ratio(s: &PAdicSymbol) -> Result<LocalRatio> {
    local_mass_ratio_inner(s).map_err(|e| match e {
        Error::Unsupported(msg) => Error::Unsupported(format!("{msg} in {s} at p = {}", s.p)),
        other => other,
    })
}

fn local_mass_ratio_inner(s: &PAdicSymbol) -> Result<LocalRatio> {
    if s.dim() != 8 {
        return Err(Error::DimensionUnsupported(s.dim()));
    }
    let mut m = Rational::one();
    if s.p == 2 {
        let view = compartments(s)?;
        for e in &view.entities {
            m *= diagonal_factor(species(e)?, 2)?;
        }
        let type_two: usize = s
            .constituents
            .iter()
            .filter(|c| !c.is_type_one())
            .map(|c| c.dim)
            .sum();
        m *= p_pow(2, -(type_two as i64));
    } else {
        for c in &s.constituents {
            m *= diagonal_factor(odd_prime_species(c)?, s.p)?;
        }
    }
    let cross = cross_term(s);
    Ok(LocalRatio {
        p: s.p,
        rational: m / std_p(s.p),
        half_exponent: cross.half_exponent,
    })
}

/// coeff · d^{7/2} · ζ_d(4) / π⁴.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassValue {
    pub coeff: Rational,
    pub d: u64,
}

#[derive(Serialize)]
struct MassJson<'a> {
    coeff_num: String,
    coeff_den: String,
    d: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<&'a str>,
}

impl MassValue {
    /// Exact value when d is a perfect square (ζ_d(4)/π⁴ is then rational).
    pub fn exact_value(&self) -> Option<Rational> {
        let root = (self.d as f64).sqrt().round() as u64;
        if root * root != self.d {
            return None;
        }
        // For square d, ζ_d(4) = ζ(4) ∏_{p | 2d} (1 − p⁻⁴) and ζ(4) = π⁴/90.
        let mut primes: Vec<u64> = factorize(self.d).primes().collect();
        if !primes.contains(&2) {
            primes.push(2);
        }
        let euler = primes
            .iter()
            .fold(q(1, 90), |acc, &p| acc * (Rational::one() - p_pow(p, -4)));
        Some(&self.coeff * p_pow(root, 7) * euler)
    }

    /// JSON object {"coeff_num","coeff_den","d"} plus optional numeric fields.
    pub fn to_json(&self, numeric: Option<&IntervalReal>, digits: usize) -> serde_json::Value {
        let (value, radius) = match numeric {
            Some(iv) => (
                Some(crate::arith::format_sci(
                    &iv.midpoint(),
                    digits,
                    crate::arith::Rounding::Nearest,
                )),
                Some(crate::arith::format_sci(
                    &iv.radius(),
                    2,
                    crate::arith::Rounding::Up,
                )),
            ),
            None => (None, None),
        };
        serde_json::to_value(MassJson {
            coeff_num: self.coeff.numer().to_string(),
            coeff_den: self.coeff.denom().to_string(),
            d: self.d,
            value: value.as_deref(),
            radius: radius.as_deref(),
        })
        .expect("mass JSON is always serializable")
    }
}

/// Mass of a rank-8 positive-definite genus from its local symbols.
pub fn mass_stepwise(g: &GenusSymbol) -> Result<MassValue> {
    if g.dim != 8 {
        return Err(Error::DimensionUnsupported(g.dim));
    }
    if g.sig != (8, 0) || g.det <= 0 {
        return Err(Error::Unsupported(
            "mass is only defined here for positive-definite genera".into(),
        ));
    }
    let d = g.det as u64;
    let mut coeff = q(1, 30240);
    for p in g.relevant_primes() {
        let s = g
            .local(p)
            .ok_or_else(|| Error::Invalid(format!("genus is missing its local symbol at {p}")))?;
        let e = crate::arith::factor::valuation(d as i128, p) as i64;
        coeff *= local_mass_ratio(s)?.normalized_to(7 * e)?;
    }
    Ok(MassValue { coeff, d })
}

/// The closed-form coefficient for determinant d, by its 2-adic valuation.
///
/// For odd d the 2-adic factor is 1/272 when d ≡ ±3 mod 8 and 1/240 when d ≡ ±1.
pub fn mass_closed_form_for_d(d: u64) -> Result<MassValue> {
    if d == 0 {
        return Err(Error::Degenerate);
    }
    let fac = factorize(d);
    let branch = match fac.exponent(2) {
        0 if kronecker(d as i128, 2) == 1 => q(1, 240),
        0 => q(1, 272),
        2 => q(1, 512),
        e if e >= 5 => q(1, 1024),
        e => {
            return Err(Error::Domain(format!(
                "2-adic valuation {e} does not occur for d = k^2 - 4"
            )))
        }
    };
    let omega = fac.odd_prime_count() as u32;
    let coeff = branch / Rational::from_integer(BigInt::from(30240u64 << omega));
    Ok(MassValue { coeff, d })
}

pub fn mass_closed_form(k: i64) -> Result<MassValue> {
    let prof = d_profile(k)?;
    let m = mass_closed_form_for_d(prof.d)?;
    debug_assert!(
        prof.e2_case != E2Case::E0 || m.coeff.denom() % BigInt::from(272) == BigInt::zero()
    );
    Ok(m)
}

/// Certified enclosure of the mass with radius at most `target_radius`.
pub fn numeric_mass(m: &MassValue, target_radius: &Rational) -> Result<IntervalReal> {
    if !target_radius.is_positive() {
        return Err(Error::Domain("target radius must be positive".into()));
    }
    if !m.coeff.is_positive() {
        return Err(Error::Invalid("mass coefficient must be positive".into()));
    }
    if let Some(x) = m.exact_value() {
        return Ok(IntervalReal::point(x));
    }
    let d = BigInt::from(m.d);
    // Scale of the result, to turn the absolute target into relative ones.
    let cube = Rational::from_integer(d.pow(3));
    let magnitude = (&m.coeff * &cube * Rational::from_integer(BigInt::from(m.d).sqrt() + 1))
        .max(Rational::one() / Rational::from_integer(BigInt::from(1u64 << 40)));
    let mut rel = (target_radius / magnitude / q(64, 1)).min(q(1, 1000));
    loop {
        let bits = bits_for(&rel);
        let zeta = zeta_d(m.d, 4, &rel);
        let p4 = pi_fourth(&rel);
        let root = IntervalReal::sqrt_of(&d, bits);
        let value = (&(&root.scale(&(&cube * &m.coeff)) * &zeta) / &p4).round_outward(bits + 64);
        if value.radius() <= *target_radius {
            return Ok(value);
        }
        rel /= q(1 << 16, 1);
    }
}

fn bits_for(r: &Rational) -> u32 {
    let inv = r.recip().ceil().to_integer();
    inv.bits() as u32 + 8
}

/// 2^{ω(d)} / (4·|O(K)|), ω counting odd primes dividing d.
pub fn orbit_lower_bound(d: u64, order: &BigInt) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Degenerate);
    }
    if order < &BigInt::from(2) || order.is_odd() {
        return Err(Error::Domain(
            "isometry group order must be even and at least 2".into(),
        ));
    }
    let omega = factorize(d).odd_prime_count() as u32;
    Ok(Rational::new(BigInt::from(1u64 << omega), order * 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::{genus_of, predicted_k_genus};
    use crate::lattice::GramMatrix;
    use crate::padic::PAdicConstituent as C;

    #[test]
    fn standard_factors() {
        assert_eq!(std_p(2), q(2048, 2835));
        assert_eq!(std_p(3), q(531441, 931840));
        let expect = (q(2, 1) * q(24, 25) * q(624, 625) * q(15624, 15625)).recip();
        assert_eq!(std_p(5), expect);
    }

    #[test]
    fn diagonal_factors() {
        assert_eq!(diagonal_factor(Species::odd(1), 7).unwrap(), q(1, 2));
        assert_eq!(
            diagonal_factor(Species::even(0, Sign::Plus), 2).unwrap(),
            q(1, 1)
        );
        assert_eq!(diagonal_factor(Species::odd(7), 2).unwrap(), std_p(2));
        assert_eq!(diagonal_factor(Species::odd(7), 11).unwrap(), std_p(11));
        // 1/(2(1+2⁻⁴)(3/4)(15/16)(63/64)) = 16/17 · std_2.
        assert_eq!(
            diagonal_factor(Species::even(8, Sign::Minus), 2).unwrap(),
            q(16, 17) * std_p(2)
        );
        assert_eq!(
            diagonal_factor(Species::even(8, Sign::Plus), 2).unwrap(),
            q(16, 15) * std_p(2)
        );
        assert!(diagonal_factor(Species::even(0, Sign::Minus), 2).is_err());
    }

    #[test]
    fn cross_terms() {
        let s =
            PAdicSymbol::new(5, vec![C::odd(0, 7, Sign::Plus), C::odd(1, 1, Sign::Plus)]).unwrap();
        assert_eq!(cross_term(&s).half_exponent, 7);
        let s = PAdicSymbol::new(
            2,
            vec![
                C::type_two(0, 6, Sign::Plus),
                C::type_one(1, 1, Sign::Plus, 7),
                C::type_one(4, 1, Sign::Plus, 1),
            ],
        )
        .unwrap();
        // 7·e_2 − 2 with e_2 = 5.
        assert_eq!(cross_term(&s).half_exponent, 33);
        let s = PAdicSymbol::new(2, vec![C::type_two(0, 8, Sign::Plus)]).unwrap();
        assert_eq!(cross_term(&s).half_exponent, 0);
    }

    #[test]
    fn local_ratios_of_complement_genera() {
        let g = predicted_k_genus(3).unwrap();
        let r2 = local_mass_ratio(g.local(2).unwrap()).unwrap();
        assert_eq!(r2.normalized_to(0).unwrap(), q(1, 272));
        let r5 = local_mass_ratio(g.local(5).unwrap()).unwrap();
        assert_eq!((r5.rational.clone(), r5.half_exponent), (q(1, 2), 7));
        let g = predicted_k_genus(4).unwrap();
        let r2 = local_mass_ratio(g.local(2).unwrap()).unwrap();
        assert_eq!(r2.normalized_to(14).unwrap(), q(1, 512));
        let g = predicted_k_genus(6).unwrap();
        let r2 = local_mass_ratio(g.local(2).unwrap()).unwrap();
        assert_eq!(r2.normalized_to(35).unwrap(), q(1, 1024));
    }

    #[test]
    fn stepwise_equals_closed_form() {
        for k in 3..=60 {
            let s = mass_stepwise(&predicted_k_genus(k).unwrap()).unwrap();
            assert_eq!(s, mass_closed_form(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn e8_and_odd_unimodular_anchors() {
        let e8 = GenusSymbol::new(
            8,
            (8, 0),
            1,
            vec![PAdicSymbol::new(2, vec![C::type_two(0, 8, Sign::Plus)]).unwrap()],
        );
        let m = mass_stepwise(&e8).unwrap();
        assert_eq!(m.coeff, q(1, 7257600));
        assert_eq!(m.exact_value().unwrap(), q(1, 696729600));
        assert_eq!(mass_closed_form_for_d(1).unwrap(), m);

        let z8 = genus_of(&GramMatrix::diagonal(&[1; 8])).unwrap();
        let m = mass_stepwise(&z8).unwrap();
        // |O(Z^8)| = 2^8 · 8!.
        assert_eq!(m.exact_value().unwrap(), q(1, 10321920));
    }

    #[test]
    fn numeric_enclosures() {
        let m = mass_closed_form(3).unwrap();
        let r = q(1, 10_000_000_000);
        let v = numeric_mass(&m, &r).unwrap();
        assert!(v.radius() <= r);
        // 5^{7/2}·ζ_5(4)/π⁴ / (30240·2·272) = 1.722332451e-7.
        let approx = crate::arith::interval::to_f64(&v.midpoint());
        assert!((approx - 1.722332451e-7).abs() < 1e-16, "{approx}");
        assert!(numeric_mass(&m, &q(0, 1)).is_err());
    }

    #[test]
    fn orbit_bounds() {
        assert_eq!(
            orbit_lower_bound(5, &BigInt::from(696729600u64)).unwrap(),
            q(2, 2786918400)
        );
        assert_eq!(orbit_lower_bound(32, &BigInt::from(10)).unwrap(), q(1, 40));
        assert_eq!(orbit_lower_bound(12, &BigInt::from(10)).unwrap(), q(2, 40));
        assert!(orbit_lower_bound(12, &BigInt::from(3)).is_err());
    }
}
