use crate::error::CliError;
use crate::{Method, SuiteArg};
use e10pairs::arith::{d_profile, format_sci, is_prime, Rational, Rounding};
use e10pairs::e10::{complement_of_pair, find_pairs, n_lower_bound, PairRecord, RootVector};
use e10pairs::genus::{genus_of, predicted_k_genus, same_invariants, GenusSymbol};
use e10pairs::lattice::{anti_isometries, discriminant_form, glue_lattice, GramMatrix};
use e10pairs::mass::{
    mass_closed_form, mass_closed_form_for_d, mass_stepwise, numeric_mass, MassValue,
};
use e10pairs::padic::{jordan_symbol, PAdicSymbol};
use e10pairs::verify::{self, Envelope, Suite};
use e10pairs::Error;
use num::BigInt;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

const MASS_DIGITS: usize = 12;

/// Radius about 1e-15 relative to the mass, enough for the printed digits.
fn radius(m: &MassValue) -> Rational {
    let d = BigInt::from(m.d);
    let scale = Rational::from_integer(d.pow(3) * d.sqrt());
    &m.coeff * scale / Rational::from_integer(BigInt::from(10u64).pow(15))
}

fn read_gram(path: &Path) -> Result<GramMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: malformed Gram matrix: {e}", path.display())))
}

fn emit_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("output is serializable");
    text.push('\n');
    emit_text(&text, out)
}

#[derive(Serialize)]
struct SymbolOut<'a> {
    notation: String,
    #[serde(flatten)]
    symbol: &'a PAdicSymbol,
}

pub fn symbol(gram: &Path, p: u64, out: Option<&Path>) -> Result<(), CliError> {
    if !is_prime(p) {
        return Err(CliError::Usage(format!("p = {p} is not prime")));
    }
    let g = read_gram(gram)?;
    if g.det() == BigInt::from(0) {
        return Err(Error::Degenerate.into());
    }
    let s = jordan_symbol(&g, p)?;
    emit(
        &SymbolOut {
            notation: s.to_string(),
            symbol: &s,
        },
        out,
    )
}

fn mass_json(m: &MassValue) -> Result<serde_json::Value, CliError> {
    let iv = numeric_mass(m, &radius(m))?;
    let mut v = m.to_json(Some(&iv), MASS_DIGITS);
    if let Some(exact) = m.exact_value() {
        v["exact"] = serde_json::Value::String(exact.to_string());
    }
    Ok(v)
}

/// The closed form covers the predicted complement genera and the even unimodular genus.
fn closed_for_genus(g: &GenusSymbol) -> Result<MassValue, CliError> {
    if g.det == 1 {
        return Ok(mass_closed_form_for_d(1)?);
    }
    let k = ((g.det + 4) as f64).sqrt().round() as i64;
    if k >= 3 && k * k - 4 == g.det && same_invariants(g, &predicted_k_genus(k)?) {
        return Ok(mass_closed_form(k)?);
    }
    Err(Error::Unsupported(format!(
        "closed form is not available for the genus {g}; use --method stepwise"
    ))
    .into())
}

#[derive(Serialize)]
struct MassOut {
    k: Option<i64>,
    d: u64,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    stepwise: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equal: Option<bool>,
}

pub fn mass(
    k: Option<i64>,
    gram: Option<&Path>,
    method: Method,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let genus = match (k, gram) {
        (Some(k), _) => {
            if k < 3 {
                return Err(CliError::Usage(format!("k = {k}: the mass needs k >= 3")));
            }
            predicted_k_genus(k)?
        }
        (None, Some(path)) => {
            let g = read_gram(path)?;
            if g.det() == BigInt::from(0) {
                return Err(Error::Degenerate.into());
            }
            if g.dim() != 8 {
                return Err(Error::DimensionUnsupported(g.dim()).into());
            }
            if !g.is_positive_definite() {
                return Err(CliError::Usage(
                    "the Gram matrix is not positive definite".into(),
                ));
            }
            genus_of(&g)?
        }
        (None, None) => return Err(CliError::Usage("give --k or --gram".into())),
    };
    let stepwise = match method {
        Method::Stepwise | Method::Both => Some(mass_stepwise(&genus)?),
        Method::Closed => None,
    };
    let closed = match method {
        Method::Closed | Method::Both => Some(match k {
            Some(k) => mass_closed_form(k)?,
            None => closed_for_genus(&genus)?,
        }),
        Method::Stepwise => None,
    };
    let equal = match (&stepwise, &closed) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let d = stepwise
        .as_ref()
        .or(closed.as_ref())
        .expect("a method ran")
        .d;
    emit(
        &MassOut {
            k,
            d,
            method: match method {
                Method::Stepwise => "stepwise",
                Method::Closed => "closed",
                Method::Both => "both",
            },
            stepwise: stepwise.as_ref().map(mass_json).transpose()?,
            closed: closed.as_ref().map(mass_json).transpose()?,
            equal,
        },
        out,
    )?;
    match equal {
        Some(false) => Err(CliError::Failed(
            "stepwise and closed-form masses differ".into(),
        )),
        _ => Ok(()),
    }
}

pub const BOUND_HEADER: &str = "k,d,e2_case,coeff_num,coeff_den,mass_lo,mass_hi,bound_lo,bound_hi";

pub fn bound(k_min: i64, k_max: i64, out: Option<&Path>) -> Result<(), CliError> {
    if k_min < 3 {
        return Err(CliError::Usage(format!(
            "k = {k_min}: the table starts at k = 3 (k = 1, 2 are covered by `verify theorem1`)"
        )));
    }
    if k_max < k_min {
        return Err(CliError::Usage(format!(
            "--k-max {k_max} is below --k {k_min}"
        )));
    }
    let mut csv = String::from(BOUND_HEADER);
    csv.push('\n');
    for k in k_min..=k_max {
        let profile = d_profile(k)?;
        let m = mass_closed_form(k)?;
        let iv = numeric_mass(&m, &radius(&m))?;
        let b = n_lower_bound(k)?.bound.expect("k >= 3 has a numeric bound");
        writeln!(
            csv,
            "{k},{},{},{},{},{},{},{},{}",
            profile.d,
            profile.e2_case.label(),
            m.coeff.numer(),
            m.coeff.denom(),
            format_sci(iv.lo(), MASS_DIGITS, Rounding::Down),
            format_sci(iv.hi(), MASS_DIGITS, Rounding::Up),
            format_sci(b.lo(), MASS_DIGITS, Rounding::Down),
            format_sci(b.hi(), MASS_DIGITS, Rounding::Up),
        )
        .expect("writing to a String");
    }
    emit_text(&csv, out)
}

fn saturated_pair(k: i64, max_height: i64) -> Result<PairRecord, CliError> {
    find_pairs(k, max_height, 1, true)
        .into_iter()
        .next()
        .ok_or_else(|| {
            CliError::Failed(format!(
                "no root pair with inner product {k} and saturated span up to height {max_height}"
            ))
        })
}

#[derive(Serialize)]
struct PairOut {
    k: i64,
    r: RootVector,
    r_prime: RootVector,
    max_height: i64,
    saturation_index: String,
    span_gram: GramMatrix,
}

pub fn pair(k: i64, max_height: i64, out: Option<&Path>) -> Result<(), CliError> {
    let p = saturated_pair(k, max_height)?;
    emit(
        &PairOut {
            k,
            r: p.r,
            r_prime: p.r_prime,
            max_height: p.max_height(),
            saturation_index: p.saturation_index().to_string(),
            span_gram: p.span_gram(),
        },
        out,
    )
}

#[derive(Serialize)]
struct ComplementOut {
    k: i64,
    r: RootVector,
    r_prime: RootVector,
    gram: GramMatrix,
    det: String,
    signature: (usize, usize),
    even: bool,
    genus: String,
    matches_predicted: Option<bool>,
}

pub fn complement(k: i64, max_height: i64, out: Option<&Path>) -> Result<(), CliError> {
    let p = saturated_pair(k, max_height)?;
    let g = complement_of_pair(&p)?;
    let ds = g.det_signature();
    let genus = genus_of(&g)?;
    let matches_predicted = if k >= 3 {
        Some(same_invariants(&genus, &predicted_k_genus(k)?))
    } else {
        None
    };
    emit(
        &ComplementOut {
            k,
            r: p.r,
            r_prime: p.r_prime,
            even: g.is_even(),
            gram: g,
            det: ds.det.to_string(),
            signature: ds.sig,
            genus: genus.to_string(),
            matches_predicted,
        },
        out,
    )?;
    match matches_predicted {
        Some(false) => Err(CliError::Failed(
            "complement genus differs from the prediction".into(),
        )),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct GlueRecord {
    det: String,
    signature: (usize, usize),
    even: bool,
}

#[derive(Serialize)]
struct GlueOut {
    k: i64,
    complement: GramMatrix,
    anti_isometries: usize,
    glues: Vec<GlueRecord>,
    all_even_unimodular_9_1: bool,
}

pub fn glue(
    k: i64,
    gram: Option<&Path>,
    max_height: i64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let kk = match gram {
        Some(path) => read_gram(path)?,
        None => complement_of_pair(&saturated_pair(k, max_height)?)?,
    };
    let l = GramMatrix::pair_span(k);
    let maps = anti_isometries(&discriminant_form(&l)?, &discriminant_form(&kk)?);
    let mut glues = Vec::with_capacity(maps.len());
    for m in &maps {
        let g = glue_lattice(&l, &kk, m)?;
        let ds = g.det_signature();
        glues.push(GlueRecord {
            det: ds.det.to_string(),
            signature: ds.sig,
            even: g.is_even(),
        });
    }
    let ok = !glues.is_empty()
        && glues
            .iter()
            .all(|g| g.even && g.det == "-1" && g.signature == (9, 1));
    emit(
        &GlueOut {
            k,
            complement: kk,
            anti_isometries: maps.len(),
            glues,
            all_even_unimodular_9_1: ok,
        },
        out,
    )?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed(
            "gluing did not produce the even unimodular (9,1) lattice".into(),
        ))
    }
}

pub fn verify(suite: SuiteArg, env: &Envelope, out: Option<&Path>) -> Result<(), CliError> {
    if env.k_max < 3 || env.max_height < 1 {
        return Err(CliError::Usage(
            "--k-max must be at least 3 and --max-height at least 1".into(),
        ));
    }
    let suite = match suite {
        SuiteArg::Lemma1 => Suite::Lemma1,
        SuiteArg::Lemma2 => Suite::Lemma2,
        SuiteArg::Lemma4 => Suite::Lemma4,
        SuiteArg::Theorem1 => Suite::Theorem1,
        SuiteArg::All => Suite::All,
    };
    let report = verify::run_suite(suite, env);
    emit(&report, out)?;
    match report.first_failure {
        Some(name) => Err(CliError::Failed(format!("check {name} failed"))),
        None => Ok(()),
    }
}
