use serde::Serialize;

use crate::error::{Error, Result};

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` in the factorization (0 if absent).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Multiplies the factorization back out.
    pub fn product(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }

    /// Number of distinct odd primes.
    pub fn odd_prime_count(&self) -> usize {
        self.factors.iter().filter(|&&(p, _)| p != 2).count()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all of u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial division; every reported factor is certified by `is_prime`.
///
/// `factorize(1)` has no factors.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize needs a positive integer");
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    debug_assert!(factors.iter().all(|&(p, _)| is_prime(p)));
    Factorization { value: n, factors }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut n: i128, p: u64) -> u32 {
    assert!(n != 0, "valuation of 0");
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// How many factors of 2 divide d = k^2 - 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum E2Case {
    /// k odd, d odd.
    E0,
    /// k = 0 mod 4, exactly 4 | d.
    E2,
    /// k = 2 mod 4, 32 | d.
    E5Plus,
}

impl E2Case {
    pub fn label(self) -> &'static str {
        match self {
            E2Case::E0 => "E0",
            E2Case::E2 => "E2",
            E2Case::E5Plus => "E5PLUS",
        }
    }
}

/// Local data of d at one prime: d = p^e * f with p not dividing f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeProfile {
    pub p: u64,
    pub e: u32,
    pub f: u64,
}

/// The factorization data of d = k^2 - 4 used throughout the local computations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DProfile {
    pub k: i64,
    pub d: u64,
    /// p = 2 first (always present, possibly with e = 0), then the odd primes dividing d.
    pub primes: Vec<PrimeProfile>,
    pub e2_case: E2Case,
}

impl DProfile {
    pub fn at(&self, p: u64) -> Option<&PrimeProfile> {
        self.primes.iter().find(|pp| pp.p == p)
    }

    pub fn e(&self, p: u64) -> u32 {
        self.at(p).map_or(0, |pp| pp.e)
    }

    pub fn f(&self, p: u64) -> u64 {
        self.at(p).map_or(self.d, |pp| pp.f)
    }

    pub fn odd_primes(&self) -> impl Iterator<Item = &PrimeProfile> {
        self.primes.iter().filter(|pp| pp.p != 2)
    }

    pub fn odd_prime_count(&self) -> usize {
        self.odd_primes().count()
    }
}

/// Local profile of an arbitrary positive d, with p = 2 always listed.
pub fn profile_of(d: u64) -> Vec<PrimeProfile> {
    let fac = factorize(d);
    let mut out = vec![PrimeProfile {
        p: 2,
        e: fac.exponent(2),
        f: d >> fac.exponent(2),
    }];
    for &(p, e) in fac.factors.iter().filter(|&&(p, _)| p != 2) {
        out.push(PrimeProfile {
            p,
            e,
            f: d / p.pow(e),
        });
    }
    out
}

pub fn d_profile(k: i64) -> Result<DProfile> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "k = {k}: the span of the pair is indefinite only for k >= 3"
        )));
    }
    let d = (k as u64)
        .checked_mul(k as u64)
        .and_then(|x| x.checked_sub(4))
        .ok_or_else(|| Error::Domain(format!("k = {k} overflows")))?;
    let primes = profile_of(d);
    let e2 = primes[0].e;
    let e2_case = match e2 {
        0 => E2Case::E0,
        2 => E2Case::E2,
        e if e >= 5 => E2Case::E5Plus,
        e => unreachable!("k^2 - 4 cannot have 2-adic valuation {e}"),
    };
    Ok(DProfile {
        k,
        d,
        primes,
        e2_case,
    })
}
