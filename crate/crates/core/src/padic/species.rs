//! 2-adic compartments, octane values and species of Jordan constituents.

use super::{PAdicConstituent, PAdicSymbol, Sign};
use crate::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Species of a constituent: an odd integer, or an even integer with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Species {
    pub n: u32,
    pub sign: Option<Sign>,
}

impl Species {
    pub fn odd(n: u32) -> Self {
        debug_assert!(n % 2 == 1);
        Species { n, sign: None }
    }

    pub fn even(n: u32, sign: Sign) -> Self {
        debug_assert!(n.is_multiple_of(2));
        Species {
            n,
            sign: Some(sign),
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Some(s) => write!(f, "{}{}", self.n, s.symbol()),
            None => write!(f, "{}", self.n),
        }
    }
}

/// A maximal run of type I constituents at consecutive scales.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compartment {
    pub members: Vec<PAdicConstituent>,
}

impl Compartment {
    pub fn dim(&self) -> usize {
        self.members.iter().map(|c| c.dim).sum()
    }
}

/// Sum of subscripts plus 4 for each constituent of sign −, mod 8.
pub fn octane(c: &Compartment) -> u8 {
    let total: i64 = c
        .members
        .iter()
        .map(|m| m.subscript.unwrap_or(0) as i64 + if m.sign == Sign::Minus { 4 } else { 0 })
        .sum();
    total.rem_euclid(8) as u8
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entity {
    /// Type II constituent with no type I neighbour.
    FreeTypeII(PAdicConstituent),
    /// Type II constituent next to a type I one, or an empty scale next to one (a love form).
    Bound {
        scale: i32,
        dim: usize,
    },
    FreeCompartment(Compartment),
}

/// Classification of the scales of a 2-adic symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompartmentView {
    pub entities: Vec<Entity>,
}

impl CompartmentView {
    pub fn free_type_two(&self) -> impl Iterator<Item = &PAdicConstituent> {
        self.entities.iter().filter_map(|e| match e {
            Entity::FreeTypeII(c) => Some(c),
            _ => None,
        })
    }

    pub fn bound(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.entities.iter().filter_map(|e| match e {
            Entity::Bound { scale, dim } => Some((*scale, *dim)),
            _ => None,
        })
    }

    pub fn love_forms(&self) -> Vec<i32> {
        self.bound()
            .filter(|&(_, d)| d == 0)
            .map(|(s, _)| s)
            .collect()
    }

    pub fn compartments(&self) -> impl Iterator<Item = &Compartment> {
        self.entities.iter().filter_map(|e| match e {
            Entity::FreeCompartment(c) => Some(c),
            _ => None,
        })
    }
}

pub fn compartments(s: &PAdicSymbol) -> Result<CompartmentView> {
    if s.p != 2 {
        return Err(Error::Domain("compartments are defined at p = 2".into()));
    }
    let type_one_at = |scale: i32| s.at_scale(scale).is_some_and(|c| c.is_type_one());
    let mut entities: Vec<(i32, Entity)> = Vec::new();
    let mut run: Vec<PAdicConstituent> = Vec::new();
    for c in &s.constituents {
        if c.is_type_one() {
            if run.last().is_some_and(|l| l.scale + 1 != c.scale) {
                let members = std::mem::take(&mut run);
                entities.push((
                    members[0].scale,
                    Entity::FreeCompartment(Compartment { members }),
                ));
            }
            run.push(c.clone());
        } else {
            if type_one_at(c.scale - 1) || type_one_at(c.scale + 1) {
                entities.push((
                    c.scale,
                    Entity::Bound {
                        scale: c.scale,
                        dim: c.dim,
                    },
                ));
            } else {
                entities.push((c.scale, Entity::FreeTypeII(c.clone())));
            }
        }
    }
    if !run.is_empty() {
        entities.push((
            run[0].scale,
            Entity::FreeCompartment(Compartment { members: run }),
        ));
    }
    let mut love: Vec<i32> = s
        .constituents
        .iter()
        .filter(|c| c.is_type_one())
        .flat_map(|c| [c.scale - 1, c.scale + 1])
        .filter(|&q| s.at_scale(q).is_none())
        .collect();
    love.sort_unstable();
    love.dedup();
    entities.extend(
        love.into_iter()
            .map(|q| (q, Entity::Bound { scale: q, dim: 0 })),
    );
    entities.sort_by_key(|(q, _)| *q);
    Ok(CompartmentView {
        entities: entities.into_iter().map(|(_, e)| e).collect(),
    })
}

/// Species of a classified 2-adic entity.
pub fn species(e: &Entity) -> Result<Species> {
    match e {
        Entity::FreeTypeII(c) => Ok(Species::even(c.dim as u32, c.sign)),
        Entity::Bound { dim, .. } => Ok(Species::odd(*dim as u32 + 1)),
        Entity::FreeCompartment(c) => {
            if c.members.len() > 1 {
                return Err(Error::Unsupported(
                    "adjacent type I constituents (compartment with several members)".into(),
                ));
            }
            let n = c.dim() as u32;
            let o = octane(c) as u32;
            if o % 2 != n % 2 {
                return Err(Error::Unsupported(format!(
                    "octane {o} has the wrong parity for dimension {n}"
                )));
            }
            Ok(match o {
                1 | 7 => Species::even(n - 1, Sign::Plus),
                3 | 5 => Species::even(n - 1, Sign::Minus),
                2 | 6 => Species::odd(n - 1),
                0 => Species::even(n - 2, Sign::Plus),
                _ => Species::even(n - 2, Sign::Minus),
            })
        }
    }
}

/// Species of a constituent at an odd prime; only odd dimensions are supported.
pub fn odd_prime_species(c: &PAdicConstituent) -> Result<Species> {
    if c.dim % 2 == 1 {
        Ok(Species::odd(c.dim as u32))
    } else {
        Err(Error::Unsupported(format!(
            "even-dimensional constituent (dim {}) at an odd prime",
            c.dim
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PAdicConstituent as C;
    use Sign::{Minus, Plus};

    fn sym(cs: Vec<PAdicConstituent>) -> PAdicSymbol {
        PAdicSymbol::new(2, cs).unwrap()
    }

    #[test]
    fn one_bound_love_form() {
        let s = sym(vec![C::type_two(0, 6, Plus), C::type_one(1, 2, Minus, 2)]);
        let v = compartments(&s).unwrap();
        assert_eq!(v.bound().collect::<Vec<_>>(), vec![(0, 6), (2, 0)]);
        assert_eq!(v.love_forms(), vec![2]);
        let comps: Vec<_> = v.compartments().collect();
        assert_eq!(comps.len(), 1);
        assert_eq!(octane(comps[0]), 6);
        assert_eq!(
            species(&Entity::FreeCompartment(comps[0].clone())).unwrap(),
            Species::odd(1)
        );
        assert_eq!(
            species(&Entity::Bound { scale: 0, dim: 6 }).unwrap(),
            Species::odd(7)
        );
    }

    #[test]
    fn three_bound_love_forms() {
        let s = sym(vec![
            C::type_two(0, 6, Plus),
            C::type_one(1, 1, Plus, -1),
            C::type_one(4, 1, Plus, 1),
        ]);
        let v = compartments(&s).unwrap();
        assert_eq!(v.love_forms(), vec![2, 3, 5]);
        let octanes: Vec<u8> = v.compartments().map(octane).collect();
        assert_eq!(octanes, vec![7, 1]);
        for c in v.compartments() {
            assert_eq!(
                species(&Entity::FreeCompartment(c.clone())).unwrap(),
                Species::even(0, Plus)
            );
        }
    }

    #[test]
    fn lone_type_two_is_free() {
        let s = sym(vec![C::type_two(0, 8, Minus)]);
        let v = compartments(&s).unwrap();
        assert_eq!(
            v.entities,
            vec![Entity::FreeTypeII(C::type_two(0, 8, Minus))]
        );
        assert_eq!(species(&v.entities[0]).unwrap().to_string(), "8-");
    }

    #[test]
    fn unimodular_odd_lattice_has_love_forms_on_both_sides() {
        let s = sym(vec![C::type_one(0, 8, Plus, 0)]);
        let v = compartments(&s).unwrap();
        assert_eq!(v.love_forms(), vec![-1, 1]);
        let c = v.compartments().next().unwrap().clone();
        assert_eq!(
            species(&Entity::FreeCompartment(c)).unwrap().to_string(),
            "6+"
        );
    }

    #[test]
    fn adjacent_type_one_is_unsupported() {
        let s = sym(vec![C::type_one(0, 1, Plus, 1), C::type_one(1, 1, Plus, 1)]);
        let v = compartments(&s).unwrap();
        let c = v.compartments().next().unwrap().clone();
        assert_eq!(c.members.len(), 2);
        assert!(matches!(
            species(&Entity::FreeCompartment(c)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn octane_invariant_under_sign_walk() {
        let a = Compartment {
            members: vec![C::type_one(3, 1, Plus, 1)],
        };
        let b = Compartment {
            members: vec![C::type_one(3, 1, Minus, 5)],
        };
        assert_eq!(octane(&a), octane(&b));
    }
}
