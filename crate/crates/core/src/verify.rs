//! Named batteries of self-checks, reported as machine-readable pass/fail records.

use crate::arith::{d_profile, format_sci, zeta_d, zeta_d4_floor, Rational, Rounding};
use crate::e10::{
    self, complement_of_pair, e8_degree_product, e8_gram, enumerate_roots, find_pairs, inner,
    n_lower_bound, negate, norm, positivity_search, simple_reflect, theorem_constant,
    weyl_group_order, RANK, W_E8_ORDER,
};
use crate::genus::{
    genus_exists, genus_of, predicted_k_genus, predicted_l_symbols, same_invariants,
};
use crate::lattice::{
    anti_isometries, automorphism_closure, discriminant_form, glue_lattice, o_action_on_disc,
    GramMatrix,
};
use crate::mass::{mass_closed_form, mass_stepwise};
use crate::padic::{jordan_symbol, Sign};
use num::{BigInt, One};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma4,
    Theorem1,
    All,
}

impl FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "lemma1" => Ok(Suite::Lemma1),
            "lemma2" => Ok(Suite::Lemma2),
            "lemma4" => Ok(Suite::Lemma4),
            "theorem1" => Ok(Suite::Theorem1),
            "all" => Ok(Suite::All),
            other => Err(crate::Error::Domain(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma4 => "lemma4",
            Suite::Theorem1 => "theorem1",
            Suite::All => "all",
        })
    }
}

/// Size of the checked envelope.
#[derive(Debug, Clone, Copy)]
pub struct Envelope {
    pub k_max: i64,
    pub max_height: i64,
    pub max_word_len: usize,
}

impl Default for Envelope {
    fn default() -> Self {
        Envelope {
            k_max: 200,
            max_height: 4,
            max_word_len: 30,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub first_failure: Option<&'static str>,
    pub checks: Vec<Check>,
}

type Outcome = std::result::Result<String, String>;

fn check(name: &'static str, f: impl FnOnce() -> Outcome) -> Check {
    match f() {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

pub fn run_suite(suite: Suite, env: &Envelope) -> Report {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Lemma1 | Suite::All) {
        checks.push(check("e10_gram_unimodular_signature_9_1", e10_unimodular));
        checks.push(check("roots_are_norm_two", || {
            roots_are_norm_two(env.max_height.max(6))
        }));
        checks.push(check("reflections_preserve_form_and_roots", || {
            reflections_preserve_roots(env.max_height.max(6))
        }));
    }
    if matches!(suite, Suite::Lemma2 | Suite::All) {
        checks.push(check("prenilpotent_pairs_have_words", || {
            prenilpotent_words(env.max_height, env.max_word_len)
        }));
        checks.push(check("inner_product_minus_two_is_negation", || {
            minus_two_is_negation(env.max_height)
        }));
    }
    if matches!(suite, Suite::Lemma4 | Suite::All) {
        checks.push(check("two_adic_valuation_is_0_2_or_at_least_5", || {
            excluded_valuations(env.k_max)
        }));
        checks.push(check("complement_genus_exists", || {
            genus_existence(env.k_max)
        }));
        checks.push(check("pair_span_symbols_match_case_table", || {
            l_symbol_table(env.k_max)
        }));
        checks.push(check("closed_form_equals_stepwise_mass", || {
            closed_equals_stepwise(env.k_max)
        }));
        checks.push(check("e8_genus_mass", e8_anchor));
        checks.push(check("reflections_act_trivially_on_discriminant", || {
            discriminant_action(env.k_max.min(50))
        }));
        checks.push(check("explicit_embeddings_match_genus_and_glue", || {
            embedding_pipeline(7, 60)
        }));
    }
    if matches!(suite, Suite::Theorem1 | Suite::All) {
        checks.push(check("weyl_e8_order", weyl_order));
        checks.push(check(
            "theorem_constant_above_2_1e-19",
            theorem_constant_check,
        ));
        checks.push(check("zeta_d_above_floor", || zeta_floor(env.k_max)));
        checks.push(check("lower_bound_small_k", small_k_bounds));
    }
    let first_failure = checks.iter().find(|c| !c.passed).map(|c| c.name);
    Report {
        suite: suite.to_string(),
        passed: first_failure.is_none(),
        first_failure,
        checks,
    }
}

pub fn e10_unimodular() -> Outcome {
    let ds = e10::e10_gram().det_signature();
    ensure(ds.det == BigInt::from(-1) && ds.sig == (9, 1), || {
        format!("det {} sig {:?}", ds.det, ds.sig)
    })?;
    Ok("det -1, signature (9,1)".into())
}

pub fn roots_are_norm_two(h: i64) -> Outcome {
    let roots = enumerate_roots(h);
    if let Some(r) = roots.iter().find(|r| norm(r) != 2) {
        return Err(format!("{r:?} has norm {}", norm(r)));
    }
    Ok(format!("{} roots with |height| <= {h}", roots.len()))
}

pub fn reflections_preserve_roots(h: i64) -> Outcome {
    let roots = enumerate_roots(h);
    for i in 0..RANK {
        for (a, r) in roots.iter().enumerate() {
            let sr = simple_reflect(i, r);
            ensure(norm(&sr) == 2, || {
                format!("s_{i} sends {r:?} off the roots")
            })?;
            ensure(simple_reflect(i, &sr) == *r, || {
                format!("s_{i} is not an involution")
            })?;
            for s in roots.iter().skip(a).step_by(7) {
                let ss = simple_reflect(i, s);
                ensure(inner(&sr, &ss) == inner(r, s), || {
                    format!("s_{i} changes the inner product of {r:?} and {s:?}")
                })?;
            }
        }
    }
    Ok(format!("{} roots, 10 simple reflections", roots.len()))
}

pub fn prenilpotent_words(h: i64, max_len: usize) -> Outcome {
    let roots = enumerate_roots(h);
    let mut pairs = 0usize;
    let mut longest = 0usize;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if inner(&roots[i], &roots[j]) < -1 {
                continue;
            }
            pairs += 1;
            for sign in [Sign::Plus, Sign::Minus] {
                match positivity_search(&roots[i], &roots[j], sign, max_len) {
                    Some(w) => longest = longest.max(w.len()),
                    None => {
                        return Err(format!(
                            "no {} word of length <= {max_len} for {:?}, {:?}",
                            if sign == Sign::Plus {
                                "positive"
                            } else {
                                "negative"
                            },
                            roots[i],
                            roots[j]
                        ))
                    }
                }
            }
        }
    }
    Ok(format!(
        "{pairs} pairs, both words found, longest {longest}"
    ))
}

pub fn minus_two_is_negation(h: i64) -> Outcome {
    let roots = enumerate_roots(h.max(6));
    let mut count = 0;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if inner(&roots[i], &roots[j]) == -2 {
                count += 1;
                ensure(roots[j] == negate(&roots[i]), || {
                    format!("{:?} and {:?} have inner product -2", roots[i], roots[j])
                })?;
            }
        }
    }
    Ok(format!("{count} pairs with inner product -2, all opposite"))
}

pub fn excluded_valuations(k_max: i64) -> Outcome {
    for k in 3..=k_max {
        let d = k * k - 4;
        let e = d.trailing_zeros();
        ensure(e == 0 || e == 2 || e >= 5, || {
            format!("k = {k}: v_2(d) = {e}")
        })?;
    }
    Ok(format!("3 <= k <= {k_max}"))
}

pub fn genus_existence(k_max: i64) -> Outcome {
    let mut mutants = 0;
    for k in 3..=k_max {
        let g = predicted_k_genus(k).map_err(err)?;
        ensure(genus_exists(&g).map_err(err)?, || {
            format!("k = {k}: genus fails")
        })?;
        let two = g.local(2).expect("2-adic symbol").clone();
        for (idx, c) in two.constituents.iter().enumerate() {
            let mut flipped = g.clone();
            let pos = flipped
                .locals
                .iter()
                .position(|s| s.p == 2)
                .expect("2-adic symbol");
            flipped.locals[pos].constituents[idx].sign = c.sign.flip();
            ensure(!genus_exists(&flipped).map_err(err)?, || {
                format!("k = {k}: sign flip at scale {} still passes", c.scale)
            })?;
            mutants += 1;
            if let Some(t) = c.subscript {
                let mut shifted = g.clone();
                shifted.locals[pos].constituents[idx].subscript = Some((t + 4) % 8);
                ensure(!genus_exists(&shifted).map_err(err)?, || {
                    format!("k = {k}: subscript shift at scale {} still passes", c.scale)
                })?;
                mutants += 1;
            }
        }
    }
    Ok(format!("3 <= k <= {k_max}, {mutants} mutants rejected"))
}

pub fn l_symbol_table(k_max: i64) -> Outcome {
    let mut compared = 0;
    for k in 3..=k_max {
        let l = GramMatrix::pair_span(k);
        for (p, predicted) in predicted_l_symbols(k).map_err(err)? {
            let computed = jordan_symbol(&l, p).map_err(err)?;
            ensure(computed.invariants() == predicted.invariants(), || {
                format!("k = {k}, p = {p}: computed {computed}, predicted {predicted}")
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} local symbols"))
}

pub fn closed_equals_stepwise(k_max: i64) -> Outcome {
    let mut cases = [0usize; 3];
    for k in 3..=k_max {
        let step = mass_stepwise(&predicted_k_genus(k).map_err(err)?).map_err(err)?;
        let closed = mass_closed_form(k).map_err(err)?;
        ensure(step == closed, || {
            format!(
                "k = {k}: stepwise {} vs closed {}",
                step.coeff, closed.coeff
            )
        })?;
        cases[d_profile(k).map_err(err)?.e2_case as usize] += 1;
    }
    ensure(cases.iter().all(|&c| c > 0), || {
        "an e_2 branch was not exercised".into()
    })?;
    Ok(format!(
        "3 <= k <= {k_max}; branches e2=0: {}, e2=2: {}, e2>=5: {}",
        cases[0], cases[1], cases[2]
    ))
}

pub fn e8_anchor() -> Outcome {
    let g = genus_of(&e8_gram()).map_err(err)?;
    let m = mass_stepwise(&g).map_err(err)?;
    let exact = m.exact_value().ok_or("d = 1 should be exact")?;
    ensure(
        exact == Rational::new(1.into(), BigInt::from(W_E8_ORDER)),
        || format!("mass {exact}"),
    )?;
    Ok(format!("mass {exact}"))
}

pub fn discriminant_action(k_max: i64) -> Outcome {
    for k in 3..=k_max {
        let l = GramMatrix::pair_span(k);
        let form = discriminant_form(&l).map_err(err)?;
        let refl_r = vec![vec![-1, -k], vec![0, 1]];
        let refl_rp = vec![vec![1, 0], vec![-k, -1]];
        let swap = vec![vec![0, 1], vec![1, 0]];
        let neg = vec![vec![-1, 0], vec![0, -1]];
        let mut gens = Vec::new();
        for (name, m) in [
            ("r", &refl_r),
            ("r'", &refl_rp),
            ("swap", &swap),
            ("-1", &neg),
        ] {
            let a = o_action_on_disc(&l, m).map_err(err)?;
            if name.starts_with('r') {
                ensure(a.is_identity(&form), || {
                    format!("k = {k}: reflection in {name} moves the discriminant group")
                })?;
            }
            gens.push(a);
        }
        let group = automorphism_closure(&form, &gens);
        ensure(group.len() <= 4, || {
            format!("k = {k}: image of order {}", group.len())
        })?;
    }
    Ok(format!("3 <= k <= {k_max}"))
}

pub fn embedding_pipeline(k_top: i64, max_height: i64) -> Outcome {
    let mut embeddings = 0;
    for k in 3..=k_top {
        let pairs = find_pairs(k, max_height, 3, true);
        ensure(!pairs.is_empty(), || {
            format!("k = {k}: no saturated pair of height <= {max_height}")
        })?;
        let predicted = predicted_k_genus(k).map_err(err)?;
        let l = GramMatrix::pair_span(k);
        let dl = discriminant_form(&l).map_err(err)?;
        for p in &pairs {
            ensure(p.saturation_index().is_one(), || {
                format!("k = {k}: span not saturated")
            })?;
            let kk = complement_of_pair(p).map_err(err)?;
            let ds = kk.det_signature();
            ensure(
                kk.dim() == 8
                    && ds.sig == (8, 0)
                    && kk.is_even()
                    && ds.det == BigInt::from(k * k - 4),
                || {
                    format!(
                        "k = {k}: complement dim {} sig {:?} det {}",
                        kk.dim(),
                        ds.sig,
                        ds.det
                    )
                },
            )?;
            let found = genus_of(&kk).map_err(err)?;
            ensure(same_invariants(&found, &predicted), || {
                format!("k = {k}: complement genus {found}")
            })?;
            let dk = discriminant_form(&kk).map_err(err)?;
            let maps = anti_isometries(&dl, &dk);
            ensure(!maps.is_empty(), || {
                format!("k = {k}: discriminants not anti-isometric")
            })?;
            for m in &maps {
                let glued = glue_lattice(&l, &kk, m).map_err(err)?;
                let gs = glued.det_signature();
                ensure(
                    glued.is_even() && gs.det == BigInt::from(-1) && gs.sig == (9, 1),
                    || format!("k = {k}: glue gives det {} sig {:?}", gs.det, gs.sig),
                )?;
            }
            embeddings += 1;
        }
    }
    Ok(format!("{embeddings} embeddings for 3 <= k <= {k_top}"))
}

pub fn weyl_order() -> Outcome {
    let by_orbits = weyl_group_order(&e8_gram()).map_err(err)?;
    ensure(
        by_orbits == BigInt::from(W_E8_ORDER) && e8_degree_product() == W_E8_ORDER,
        || format!("orbit-stabilizer gives {by_orbits}"),
    )?;
    Ok(format!("|W(E8)| = {by_orbits}"))
}

pub fn theorem_constant_check() -> Outcome {
    let c = theorem_constant(&Rational::new(1.into(), BigInt::from(10u64).pow(40)));
    let e21 = BigInt::from(10u64).pow(21);
    let (lo, hi) = (
        Rational::new(217.into(), e21.clone()),
        Rational::new(219.into(), e21.clone()),
    );
    let stated = Rational::new(210.into(), e21);
    ensure(
        c.is_above(&lo) && c.is_below(&hi) && c.is_above(&stated),
        || format!("constant {}", c.to_sci(6)),
    )?;
    Ok(format!("constant {}", c.to_sci(6)))
}

pub fn zeta_floor(k_max: i64) -> Outcome {
    let r = Rational::new(1.into(), BigInt::from(1_000_000u64));
    let floor = zeta_d4_floor(&r);
    for k in 3..=k_max {
        let d = (k * k - 4) as u64;
        let z = zeta_d(d, 4, &r);
        ensure(z.lo() > floor.hi(), || {
            format!(
                "d = {d}: zeta_d(4) lower end {} not above {}",
                format_sci(z.lo(), 8, Rounding::Down),
                format_sci(floor.hi(), 8, Rounding::Up)
            )
        })?;
    }
    Ok(format!(
        "3 <= k <= {k_max}, floor {}",
        format_sci(floor.hi(), 8, Rounding::Up)
    ))
}

pub fn small_k_bounds() -> Outcome {
    for k in [1, 2] {
        ensure(n_lower_bound(k).map_err(err)?.positive, || {
            format!("k = {k}")
        })?;
    }
    ensure(n_lower_bound(0).is_err(), || "k = 0 accepted".into())?;
    let b = n_lower_bound(3).map_err(err)?;
    let bound = b.bound.ok_or("k = 3 has no numeric bound")?;
    let floor = Rational::new(587.into(), BigInt::from(10u64).pow(19));
    ensure(bound.is_above(&floor), || {
        format!("N(3) bound {}", bound.to_sci(4))
    })?;
    Ok(format!(
        "N(3) >= {}",
        format_sci(bound.lo(), 4, Rounding::Down)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse() {
        assert_eq!("lemma4".parse::<Suite>().unwrap(), Suite::Lemma4);
        assert!("lemma3".parse::<Suite>().is_err());
    }

    #[test]
    fn small_envelope_passes() {
        let env = Envelope {
            k_max: 20,
            max_height: 2,
            max_word_len: 30,
        };
        let r = run_suite(Suite::All, &env);
        assert!(r.passed, "{:?}", r.first_failure);
    }
}
