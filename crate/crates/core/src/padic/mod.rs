//! Local (p-adic) symbols of integral lattices and the quantities read off them.

mod jordan;
mod species;

pub use jordan::jordan_symbol;
pub use species::{
    compartments, octane, odd_prime_species, species, Compartment, CompartmentView, Entity, Species,
};

use crate::arith::kronecker;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn from_int(x: i32) -> Self {
        if x < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_int(self.value() * other.value())
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Parity type of a 2-adic constituent; odd-p constituents are always type I.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstituentType {
    I,
    II,
}

/// One Jordan constituent q^{±n} at scale q = p^scale.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PAdicConstituent {
    pub scale: i32,
    pub dim: usize,
    pub sign: Sign,
    #[serde(rename = "type")]
    pub kind: ConstituentType,
    /// Oddity of a 2-adic type I constituent, in 0..8.
    pub subscript: Option<u8>,
}

impl PAdicConstituent {
    pub fn odd(scale: i32, dim: usize, sign: Sign) -> Self {
        PAdicConstituent {
            scale,
            dim,
            sign,
            kind: ConstituentType::I,
            subscript: None,
        }
    }

    pub fn type_one(scale: i32, dim: usize, sign: Sign, subscript: i64) -> Self {
        PAdicConstituent {
            scale,
            dim,
            sign,
            kind: ConstituentType::I,
            subscript: Some(subscript.rem_euclid(8) as u8),
        }
    }

    pub fn type_two(scale: i32, dim: usize, sign: Sign) -> Self {
        PAdicConstituent {
            scale,
            dim,
            sign,
            kind: ConstituentType::II,
            subscript: None,
        }
    }

    pub fn is_type_one(&self) -> bool {
        self.kind == ConstituentType::I
    }
}

/// A p-adic symbol: constituents ordered by increasing scale.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PAdicSymbol {
    pub p: u64,
    pub constituents: Vec<PAdicConstituent>,
}

/// Basis-independent data used to compare symbols.
///
/// 2-adic symbols are not canonicalized, so at p = 2 only the scale/dimension/type
/// profile, the total sign and the total oddity are compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolInvariants {
    pub p: u64,
    pub profile: Vec<(i32, usize, ConstituentType)>,
    pub signs: Vec<Sign>,
    pub sign_product: Sign,
    pub local_invariant: u8,
}

impl PAdicSymbol {
    pub fn new(p: u64, mut constituents: Vec<PAdicConstituent>) -> Result<Self> {
        constituents.sort_by_key(|c| c.scale);
        let s = PAdicSymbol { p, constituents };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !crate::arith::is_prime(self.p) {
            return Err(Error::Domain(format!("{} is not prime", self.p)));
        }
        for w in self.constituents.windows(2) {
            if w[0].scale >= w[1].scale {
                return Err(Error::Invalid("constituent scales must increase".into()));
            }
        }
        for c in &self.constituents {
            if c.dim == 0 {
                return Err(Error::Invalid("stored constituents need dim >= 1".into()));
            }
            match (self.p == 2, c.kind, c.subscript) {
                (false, ConstituentType::I, None) => {}
                (true, ConstituentType::II, None) if c.dim % 2 == 0 => {}
                (true, ConstituentType::I, Some(t)) if t < 8 && (t as usize) % 2 == c.dim % 2 => {}
                _ => {
                    return Err(Error::Invalid(format!(
                        "malformed constituent at scale {} for p = {}",
                        c.scale, self.p
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.constituents.iter().map(|c| c.dim).sum()
    }

    /// p-adic valuation of the determinant, Σ scale·dim.
    pub fn det_valuation(&self) -> i64 {
        self.constituents
            .iter()
            .map(|c| c.scale as i64 * c.dim as i64)
            .sum()
    }

    pub fn sign_product(&self) -> Sign {
        self.constituents
            .iter()
            .fold(Sign::Plus, |acc, c| acc.times(c.sign))
    }

    pub fn at_scale(&self, scale: i32) -> Option<&PAdicConstituent> {
        self.constituents.iter().find(|c| c.scale == scale)
    }

    /// Whether the unit part of `det` lies in the square class recorded by the signs.
    pub fn matches_det(&self, det: i128) -> bool {
        if det == 0 {
            return false;
        }
        let v = crate::arith::factor::valuation(det, self.p) as i64;
        if v != self.det_valuation() {
            return false;
        }
        let unit = det / (self.p as i128).pow(v as u32);
        self.sign_product() == unit_class(unit, self.p)
    }

    /// Direct sum of two symbols at the same prime.
    pub fn direct_sum(&self, other: &PAdicSymbol) -> Result<PAdicSymbol> {
        if self.p != other.p {
            return Err(Error::Invalid(
                "direct sum of symbols at different primes".into(),
            ));
        }
        let mut out: Vec<PAdicConstituent> = self.constituents.clone();
        for c in &other.constituents {
            match out.iter_mut().find(|x| x.scale == c.scale) {
                Some(x) => {
                    x.dim += c.dim;
                    x.sign = x.sign.times(c.sign);
                    match (x.kind, c.kind) {
                        (ConstituentType::II, ConstituentType::II) => {}
                        _ => {
                            let t = x.subscript.unwrap_or(0) + c.subscript.unwrap_or(0);
                            x.kind = ConstituentType::I;
                            x.subscript = (self.p == 2).then_some(t % 8);
                        }
                    }
                }
                None => out.push(c.clone()),
            }
        }
        PAdicSymbol::new(self.p, out)
    }

    pub fn invariants(&self) -> SymbolInvariants {
        let two = self.p == 2;
        SymbolInvariants {
            p: self.p,
            profile: self
                .constituents
                .iter()
                .map(|c| (c.scale, c.dim, c.kind))
                .collect(),
            signs: if two {
                Vec::new()
            } else {
                self.constituents.iter().map(|c| c.sign).collect()
            },
            sign_product: self.sign_product(),
            local_invariant: if two {
                oddity(self).unwrap_or(0)
            } else {
                p_excess(self).unwrap_or(0)
            },
        }
    }
}

/// Square class of a p-adic unit: Legendre symbol for odd p, ±1 mod 8 test for p = 2.
pub fn unit_class(unit: i128, p: u64) -> Sign {
    if p == 2 {
        match unit.rem_euclid(8) {
            1 | 7 => Sign::Plus,
            _ => Sign::Minus,
        }
    } else {
        Sign::from_int(kronecker(unit, p as i128))
    }
}

impl fmt::Display for PAdicSymbol {
    /// Standard genus-symbol notation, e.g. `1^{-2}_II 5^{-1}` or `2^{+1}_1 (2^4)^{+1}_7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constituents.is_empty() {
            return write!(f, "1");
        }
        for (i, c) in self.constituents.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match c.scale {
                0 => write!(f, "1")?,
                1 => write!(f, "{}", self.p)?,
                s => write!(f, "({}^{})", self.p, s)?,
            }
            write!(f, "^{{{}{}}}", c.sign.symbol(), c.dim)?;
            match (c.kind, c.subscript) {
                (ConstituentType::II, _) if self.p == 2 => write!(f, "_II")?,
                (_, Some(t)) => write!(f, "_{t}")?,
                _ => {}
            }
        }
        Ok(())
    }
}

fn pow_mod8(p: u64, e: i32) -> i64 {
    (0..e.max(0)).fold(1i64, |acc, _| acc * (p % 8) as i64 % 8)
}

/// The p-excess of a symbol at an odd prime, in 0..8.
pub fn p_excess(s: &PAdicSymbol) -> Result<u8> {
    if s.p == 2 {
        return Err(Error::Domain("p-excess is defined for odd primes".into()));
    }
    let mut total = 0i64;
    for c in &s.constituents {
        total += c.dim as i64 * (pow_mod8(s.p, c.scale) - 1);
        if c.scale % 2 != 0 && c.sign == Sign::Minus {
            total += 4;
        }
    }
    Ok(total.rem_euclid(8) as u8)
}

/// The oddity of a 2-adic symbol, in 0..8.
///
/// Every antisquare constituent (odd scale, sign −) adds 4, whatever its type.
pub fn oddity(s: &PAdicSymbol) -> Result<u8> {
    if s.p != 2 {
        return Err(Error::Domain("oddity is defined at p = 2".into()));
    }
    let mut total = 0i64;
    for c in &s.constituents {
        total += c.subscript.unwrap_or(0) as i64;
        if c.scale % 2 != 0 && c.sign == Sign::Minus {
            total += 4;
        }
    }
    Ok(total.rem_euclid(8) as u8)
}

/// Symbol of the lattice with negated form.
pub fn negate_symbol(s: &PAdicSymbol) -> PAdicSymbol {
    let twist = if s.p == 2 {
        Sign::Plus
    } else {
        unit_class(-1, s.p)
    };
    let constituents = s
        .constituents
        .iter()
        .map(|c| {
            let mut c = c.clone();
            if s.p == 2 {
                c.subscript = c.subscript.map(|t| (8 - t) % 8);
            } else if c.dim % 2 == 1 {
                c.sign = c.sign.times(twist);
            }
            c
        })
        .collect();
    PAdicSymbol {
        p: s.p,
        constituents,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    #[test]
    fn excess_values() {
        let s = PAdicSymbol::new(3, vec![PAdicConstituent::odd(1, 1, Plus)]).unwrap();
        assert_eq!(p_excess(&s).unwrap(), 2);
        let s = PAdicSymbol::new(5, vec![PAdicConstituent::odd(1, 1, Minus)]).unwrap();
        assert_eq!(p_excess(&s).unwrap(), 0);
        let s = PAdicSymbol::new(7, vec![PAdicConstituent::odd(0, 5, Plus)]).unwrap();
        assert_eq!(p_excess(&s).unwrap(), 0);
        assert!(p_excess(&PAdicSymbol::new(2, vec![]).unwrap()).is_err());
    }

    #[test]
    fn oddity_values() {
        let e6 = PAdicSymbol::new(2, vec![PAdicConstituent::type_two(0, 6, Plus)]).unwrap();
        assert_eq!(oddity(&e6).unwrap(), 0);
        let two = PAdicSymbol::new(2, vec![PAdicConstituent::type_one(1, 1, Plus, 1)]).unwrap();
        assert_eq!(oddity(&two).unwrap(), 1);
        let six = PAdicSymbol::new(2, vec![PAdicConstituent::type_one(1, 1, Minus, 3)]).unwrap();
        assert_eq!(oddity(&six).unwrap(), 7);
        assert!(oddity(&PAdicSymbol::new(3, vec![]).unwrap()).is_err());
    }

    #[test]
    fn display_notation() {
        let s = PAdicSymbol::new(
            2,
            vec![
                PAdicConstituent::type_two(0, 6, Plus),
                PAdicConstituent::type_one(1, 1, Plus, -1),
                PAdicConstituent::type_one(4, 1, Plus, 1),
            ],
        )
        .unwrap();
        assert_eq!(s.to_string(), "1^{+6}_II 2^{+1}_7 (2^4)^{+1}_1");
    }

    #[test]
    fn json_shape() {
        let s = PAdicSymbol::new(2, vec![PAdicConstituent::type_one(1, 2, Minus, 6)]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"p":2,"constituents":[{"scale":1,"dim":2,"sign":"-","type":"I","subscript":6}]}"#
        );
        let back: PAdicSymbol = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn malformed_rejected() {
        assert!(PAdicSymbol::new(2, vec![PAdicConstituent::type_two(0, 3, Plus)]).is_err());
        assert!(PAdicSymbol::new(2, vec![PAdicConstituent::type_one(0, 2, Plus, 1)]).is_err());
        assert!(PAdicSymbol::new(5, vec![PAdicConstituent::type_one(0, 1, Plus, 1)]).is_err());
        assert!(PAdicSymbol::new(4, vec![]).is_err());
    }

    #[test]
    fn negation_rules() {
        let l2 = PAdicSymbol::new(2, vec![PAdicConstituent::type_one(1, 2, Minus, 6)]).unwrap();
        let n = negate_symbol(&l2);
        assert_eq!(n.constituents[0].subscript, Some(2));
        assert_eq!(n.constituents[0].sign, Minus);
        let l3 = PAdicSymbol::new(
            3,
            vec![
                PAdicConstituent::odd(0, 1, Minus),
                PAdicConstituent::odd(1, 1, Plus),
            ],
        )
        .unwrap();
        let n = negate_symbol(&l3);
        assert_eq!(n.constituents[0].sign, Plus);
        assert_eq!(n.constituents[1].sign, Minus);
        let l5 = PAdicSymbol::new(
            5,
            vec![
                PAdicConstituent::odd(0, 1, Minus),
                PAdicConstituent::odd(1, 1, Minus),
            ],
        )
        .unwrap();
        assert_eq!(negate_symbol(&l5), l5);
    }
}
