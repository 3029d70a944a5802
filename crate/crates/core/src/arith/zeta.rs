//! Certified enclosures of the L-series zeta_d(s) and of pi^4.

use num::{BigInt, Integer, One, Signed, Zero};

use super::factor::is_prime;
use super::interval::IntervalReal;
use super::kronecker::kronecker;
use super::Rational;

/// Bits of 1/x, rounded up; used to size fixed-point sums.
fn bits_of_recip(x: &Rational) -> u32 {
    assert!(x.is_positive());
    let q = super::interval::ceil_integer(&x.recip());
    q.bits() as u32 + 1
}

/// Upper bound M^(1-s)/(s-1) on sum over m > M of m^-s.
fn tail_bound(cutoff: u64, s: u32) -> Rational {
    Rational::new(
        BigInt::one(),
        BigInt::from(s - 1) * num::pow(BigInt::from(cutoff), (s - 1) as usize),
    )
}

/// Smallest cutoff whose tail bound is at most `budget`.
fn cutoff_for(budget: &Rational, s: u32) -> u64 {
    let mut hi = 1u64;
    while &tail_bound(hi, s) > budget {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if &tail_bound(mid, s) > budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi.max(1)
}

/// Encloses sum over m >= 1 of coeff(m) m^-s where |coeff| <= 1, to within `radius`.
fn dirichlet_sum(coeff: impl Fn(u64) -> i32, s: u32, radius: &Rational) -> IntervalReal {
    assert!(s >= 2, "series needs s >= 2");
    assert!(radius.is_positive(), "radius must be positive");
    let half = radius / Rational::from_integer(2.into());
    let cutoff = cutoff_for(&half, s);
    // Fixed-point precision so that the accumulated floor/ceil slack is below radius/2.
    let bits = bits_of_recip(&half) + 64 - cutoff.leading_zeros() + 2;
    if bits <= 120 {
        return dirichlet_sum_native(&coeff, s, cutoff, bits);
    }
    let one = BigInt::one() << bits;

    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for m in 1..=cutoff {
        let c = coeff(m);
        if c == 0 {
            continue;
        }
        let (q, r) = one.div_rem(&num::pow(BigInt::from(m), s as usize));
        let (fl, ce) = if r.is_zero() {
            (q.clone(), q)
        } else {
            (q.clone(), q + 1)
        };
        if c > 0 {
            lo += fl;
            hi += ce;
        } else {
            lo -= ce;
            hi -= fl;
        }
    }
    let denom = Rational::from_integer(one);
    let tail = tail_bound(cutoff, s);
    IntervalReal::new(
        Rational::from_integer(lo) / &denom - &tail,
        Rational::from_integer(hi) / &denom + &tail,
    )
}

/// Same sum as `dirichlet_sum` when every fixed-point quantity fits in 128 bits.
fn dirichlet_sum_native(
    coeff: &impl Fn(u64) -> i32,
    s: u32,
    cutoff: u64,
    bits: u32,
) -> IntervalReal {
    let one = 1u128 << bits;
    let (mut lo, mut hi) = (0i128, 0i128);
    for m in 1..=cutoff {
        let c = coeff(m);
        if c == 0 {
            continue;
        }
        let q = match (m as u128).checked_pow(s) {
            Some(power) => one / power,
            None => 0,
        };
        let (fl, ce) = (q as i128, q as i128 + 1);
        if c > 0 {
            lo += fl;
            hi += ce;
        } else {
            lo -= ce;
            hi -= fl;
        }
    }
    let denom = Rational::from_integer(BigInt::one() << bits);
    let tail = tail_bound(cutoff, s);
    IntervalReal::new(
        Rational::from_integer(lo.into()) / &denom - &tail,
        Rational::from_integer(hi.into()) / &denom + &tail,
    )
}

/// zeta_d(s) = sum over m >= 1 with gcd(m, 2d) = 1 of (d|m) m^-s.
///
/// The returned interval has width at most `2 * target_radius`.
pub fn zeta_d(d: u64, s: u32, target_radius: &Rational) -> IntervalReal {
    assert!(d >= 1);
    let d_signed = d as i128;
    dirichlet_sum(
        |m| {
            if m % 2 == 0 {
                0
            } else {
                kronecker(d_signed, m as i128)
            }
        },
        s,
        target_radius,
    )
}

/// Riemann zeta(s) by direct summation.
pub fn riemann_zeta(s: u32, target_radius: &Rational) -> IntervalReal {
    dirichlet_sum(|_| 1, s, target_radius)
}

/// Euler product of zeta_d(s) over primes up to `prime_bound`, widened by the truncation bound.
pub fn zeta_d_euler(d: u64, s: u32, prime_bound: u64) -> IntervalReal {
    assert!(prime_bound >= 2);
    let mut product = Rational::one();
    for p in (3..=prime_bound).filter(|&p| is_prime(p) && !d.is_multiple_of(p)) {
        let chi = kronecker(d as i128, p as i128);
        let factor =
            Rational::one() - Rational::new(chi.into(), num::pow(BigInt::from(p), s as usize));
        product /= factor;
    }
    IntervalReal::ball(product, tail_bound(prime_bound, s))
}

/// arctan(1/x) to within 2^-bits (plus rounding slack), by the alternating series.
fn arctan_recip(x: u64, bits: u32) -> IntervalReal {
    let one = BigInt::one() << (bits + 8);
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = BigInt::from(x);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut n = 0u64;
    loop {
        let denom = &power * BigInt::from(2 * n + 1);
        let (q, r) = one.div_rem(&denom);
        let ce = if r.is_zero() { q.clone() } else { &q + 1 };
        if ce <= BigInt::one() {
            // Remaining alternating tail is bounded by this term (< 2 ulp).
            lo -= 2;
            hi += 2;
            break;
        }
        if n.is_multiple_of(2) {
            lo += &q;
            hi += ce;
        } else {
            lo -= ce;
            hi -= &q;
        }
        power *= &x2;
        n += 1;
    }
    let scale = Rational::from_integer(one);
    IntervalReal::new(
        Rational::from_integer(lo) / &scale,
        Rational::from_integer(hi) / &scale,
    )
}

/// pi from Machin's formula pi = 16 atan(1/5) - 4 atan(1/239).
pub fn pi_interval(bits: u32) -> IntervalReal {
    let a = arctan_recip(5, bits + 6);
    let b = arctan_recip(239, bits + 6);
    &a.scale(&Rational::from_integer(16.into())) - &b.scale(&Rational::from_integer(4.into()))
}

/// Encloses pi^4 with width at most `2 * target_radius`.
pub fn pi_fourth(target_radius: &Rational) -> IntervalReal {
    assert!(target_radius.is_positive());
    let mut bits = bits_of_recip(target_radius) + 10;
    loop {
        let p4 = pi_interval(bits).powi(4);
        if p4.width() <= target_radius * Rational::from_integer(2.into()) {
            return p4;
        }
        bits += 16;
    }
}

/// Encloses 2 - pi^4/90, the lower bound for every zeta_d(4).
pub fn zeta_d4_floor(target_radius: &Rational) -> IntervalReal {
    let p4 = pi_fourth(&(target_radius * Rational::from_integer(90.into())));
    let two = IntervalReal::from_integer(2);
    &two - &p4.scale(&Rational::new(1.into(), 90.into()))
}

/// f64 view used only in diagnostics.
pub fn approx(x: &IntervalReal) -> f64 {
    super::interval::to_f64(&x.midpoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn tiny(exp10: u32) -> Rational {
        Rational::new(BigInt::one(), num::pow(BigInt::from(10), exp10 as usize))
    }

    #[test]
    fn pi_fourth_known_digits() {
        let p4 = pi_fourth(&tiny(6));
        assert!(p4.contains(&q(97_409_091_034, 1_000_000_000)));
        assert!(p4.width() <= tiny(6) * q(2, 1));
        let coarse = pi_fourth(&q(1, 1));
        assert!(coarse.width() <= q(2, 1));
        assert!(coarse.contains(&q(97_409, 1000)));
    }

    #[test]
    fn pi_itself() {
        let p = pi_interval(100);
        assert!(p.is_above(&q(314_159_265_358_979, 100_000_000_000_000)));
        assert!(p.is_below(&q(314_159_265_358_980, 100_000_000_000_000)));
        assert!(p.width() < tiny(28));
    }

    #[test]
    fn zeta4_matches_pi4_over_90() {
        let r = tiny(9);
        let z = riemann_zeta(4, &r);
        let p4 = pi_fourth(&tiny(12)).scale(&q(1, 90));
        assert!(z.overlaps(&p4));
        assert!(z.width() <= &r * q(2, 1));
    }

    #[test]
    fn zeta_one_is_pi4_over_96() {
        let z = zeta_d(1, 4, &tiny(10));
        let target = pi_fourth(&tiny(14)).scale(&q(1, 96));
        assert!(z.overlaps(&target));
        // pi^4/96 = 1.0146780316...
        assert!((z.midpoint() - q(10_146_780, 10_000_000)).abs() < tiny(7));
    }

    #[test]
    fn zeta_five_by_partial_sums() {
        // 1 - 3^-4 - 7^-4 + 9^-4 + 11^-4 - 13^-4 - 17^-4 + 19^-4 + ..., within 1e-6.
        let z = zeta_d(5, 4, &tiny(8));
        assert!((z.midpoint() - q(9_874_205, 10_000_000)).abs() < tiny(6));
    }

    #[test]
    fn radius_is_honored() {
        for &d in &[1u64, 5, 12, 32, 45, 39_996] {
            let r = tiny(7);
            let z = zeta_d(d, 4, &r);
            assert!(z.width() <= &r * q(2, 1), "d = {d}");
        }
    }

    #[test]
    fn euler_product_agrees_with_dirichlet_series() {
        for d in 1..=100u64 {
            let series = zeta_d(d, 4, &tiny(8));
            let product = zeta_d_euler(d, 4, 60);
            assert!(series.overlaps(&product), "d = {d}");
        }
    }

    #[test]
    fn native_and_bigint_sums_agree() {
        let chi = |m: u64| {
            if m.is_multiple_of(2) {
                0
            } else {
                kronecker(21, m as i128)
            }
        };
        let native = dirichlet_sum_native(&chi, 4, 500, 60);
        let r = tiny(9);
        let big = dirichlet_sum(chi, 4, &r);
        assert!(native.overlaps(&big));
    }

    #[test]
    fn zeta_floor_value() {
        let f = zeta_d4_floor(&tiny(12));
        // 2 - pi^4/90 = 0.91767676628...
        assert!((f.midpoint() - q(91_767_677, 100_000_000)).abs() < tiny(8));
    }
}
