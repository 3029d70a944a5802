use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Closed interval [lo, hi] with exact rational endpoints.
///
/// Every operation returns an interval containing all results of the
/// corresponding real operation on members of the operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalReal {
    lo: Rational,
    hi: Rational,
}

impl IntervalReal {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        IntervalReal { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        IntervalReal {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::point(Rational::from_integer(n.into()))
    }

    /// [center - radius, center + radius].
    pub fn ball(center: Rational, radius: Rational) -> Self {
        assert!(!radius.is_negative());
        IntervalReal::new(&center - &radius, center + radius)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn radius(&self) -> Rational {
        self.width() / Rational::from_integer(2.into())
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &IntervalReal) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &IntervalReal) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Every member is strictly greater than `x`.
    pub fn is_above(&self, x: &Rational) -> bool {
        &self.lo > x
    }

    pub fn is_below(&self, x: &Rational) -> bool {
        &self.hi < x
    }

    pub fn hull(&self, other: &IntervalReal) -> IntervalReal {
        IntervalReal {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn scale(&self, c: &Rational) -> IntervalReal {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            IntervalReal { lo: b, hi: a }
        } else {
            IntervalReal { lo: a, hi: b }
        }
    }

    pub fn powi(&self, n: u32) -> IntervalReal {
        let mut acc = IntervalReal::from_integer(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        // Even powers of an interval straddling 0 start at 0.
        if n.is_multiple_of(2) && self.lo.is_negative() && self.hi.is_positive() {
            acc.lo = Rational::zero();
        }
        acc
    }

    pub fn recip(&self) -> IntervalReal {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing 0"
        );
        IntervalReal {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    /// Rounds the endpoints outward to multiples of 2^-bits.
    pub fn round_outward(&self, bits: u32) -> IntervalReal {
        let scale = BigInt::one() << bits;
        let lo = (&self.lo * Rational::from_integer(scale.clone())).floor();
        let hi = (&self.hi * Rational::from_integer(scale.clone())).ceil();
        let denom = Rational::from_integer(scale);
        IntervalReal {
            lo: lo / &denom,
            hi: hi / denom,
        }
    }

    /// Enclosure of sqrt(n) with width 2^-bits.
    pub fn sqrt_of(n: &BigInt, bits: u32) -> IntervalReal {
        assert!(!n.is_negative());
        let scaled = n << (2 * bits as usize);
        let root = scaled.sqrt();
        let denom = BigInt::one() << bits;
        let lo = BigRational::new(root.clone(), denom.clone());
        let hi = if &root * &root == scaled {
            lo.clone()
        } else {
            BigRational::new(root + 1, denom)
        };
        IntervalReal { lo, hi }
    }

    /// `midpoint ± radius` in scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        format!(
            "{} ± {}",
            format_sci(&self.midpoint(), digits, Rounding::Nearest),
            format_sci(&self.radius(), 2, Rounding::Up)
        )
    }
}

impl fmt::Display for IntervalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_sci(&self.lo, 15, Rounding::Down),
            format_sci(&self.hi, 15, Rounding::Up)
        )
    }
}

impl Add for &IntervalReal {
    type Output = IntervalReal;
    fn add(self, rhs: &IntervalReal) -> IntervalReal {
        IntervalReal {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &IntervalReal {
    type Output = IntervalReal;
    fn sub(self, rhs: &IntervalReal) -> IntervalReal {
        IntervalReal {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &IntervalReal {
    type Output = IntervalReal;
    fn neg(self) -> IntervalReal {
        IntervalReal {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &IntervalReal {
    type Output = IntervalReal;
    fn mul(self, rhs: &IntervalReal) -> IntervalReal {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        IntervalReal { lo, hi }
    }
}

impl Div for &IntervalReal {
    type Output = IntervalReal;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &IntervalReal) -> IntervalReal {
        self * &rhs.recip()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
    Nearest,
}

fn pow10(e: u32) -> BigInt {
    num::pow(BigInt::from(10), e as usize)
}

/// Decimal scientific notation for an exact rational, rounded in the given direction.
pub fn format_sci(x: &Rational, digits: usize, rounding: Rounding) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let mag = x.abs();
    // Directed rounding of -|x| flips direction on the magnitude.
    let mag_rounding = match (negative, rounding) {
        (true, Rounding::Down) => Rounding::Up,
        (true, Rounding::Up) => Rounding::Down,
        (_, r) => r,
    };

    // Exponent e with 10^e <= |x| < 10^(e+1).
    let mut e = mag.numer().to_string().len() as i64 - mag.denom().to_string().len() as i64;
    let ten_pow = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(pow10(k as u32))
        } else {
            Rational::new(BigInt::one(), pow10((-k) as u32))
        }
    };
    while ten_pow(e) > mag {
        e -= 1;
    }
    while ten_pow(e + 1) <= mag {
        e += 1;
    }

    let shift = digits as i64 - 1 - e;
    let scaled = &mag * ten_pow(shift);
    let mut m = match mag_rounding {
        Rounding::Down => scaled.floor().to_integer(),
        Rounding::Up => scaled.ceil().to_integer(),
        Rounding::Nearest => scaled.round().to_integer(),
    };
    if m == pow10(digits as u32) {
        m = pow10(digits as u32 - 1);
        e += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if negative { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

/// Nearest f64 to a rational (for display and loose sanity checks only).
pub fn to_f64(x: &Rational) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    let shift = (d.bits() as i64 - 60).max(0) as usize;
    let shift_n = (n.magnitude().bits() as i64 - 60).max(0) as usize;
    let nf = (n >> shift_n).to_f64().unwrap_or(f64::NAN);
    let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
    nf / df * 2f64.powi(shift_n as i32 - shift as i32)
}

/// Ceiling of a positive rational as an integer.
pub(crate) fn ceil_integer(x: &Rational) -> BigInt {
    let (q, r) = x.numer().div_rem(x.denom());
    if r.is_positive() {
        q + 1
    } else {
        q
    }
}
