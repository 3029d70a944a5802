//! Acceptance run: one line per criterion, nonzero exit if any fails.

use e10pairs::arith::{d_profile, Rational};
use e10pairs::e10::{
    enumerate_roots, inner, is_positive, negate, positivity_search, theorem_constant, W_E8_ORDER,
};
use e10pairs::padic::Sign;
use e10pairs::verify;
use num::{BigInt, ToPrimitive};
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn closed_vs_stepwise() -> Outcome {
    let detail = verify::closed_equals_stepwise(200)?;
    let mut seen = [false; 3];
    for k in 3..=200 {
        seen[d_profile(k).map_err(|e| e.to_string())?.e2_case as usize] = true;
    }
    if seen != [true; 3] {
        return Err("not every e_2 branch occurs".into());
    }
    Ok(detail)
}

fn e8_anchor() -> Outcome {
    // Independent count: |W(E8)| is the product of the fundamental degrees.
    let degrees: u64 = [2u64, 8, 12, 14, 18, 20, 24, 30].iter().product();
    if degrees != W_E8_ORDER {
        return Err(format!("degree product {degrees}"));
    }
    verify::e8_anchor()
}

fn theorem_constant_check() -> Outcome {
    let detail = verify::theorem_constant_check()?;
    // Floating-point oracle for the same expression.
    let pi4 = std::f64::consts::PI.powi(4);
    let approx = 2.0 * (2.0 - pi4 / 90.0) / (30240.0 * pi4 * 4.0 * W_E8_ORDER as f64 * 1024.0);
    let c = theorem_constant(&Rational::new(1.into(), BigInt::from(10u64).pow(40)));
    let mid = c.midpoint();
    let mid = mid.numer().to_f64().unwrap() / mid.denom().to_f64().unwrap();
    if ((mid - approx) / approx).abs() > 1e-12 {
        return Err(format!("certified {mid:e} vs float {approx:e}"));
    }
    Ok(detail)
}

fn prenilpotent_words() -> Outcome {
    let roots = enumerate_roots(4);
    let mut pairs = 0;
    let mut opposite = 0;
    for (i, r) in roots.iter().enumerate() {
        for rp in &roots[i + 1..] {
            let ip = inner(r, rp);
            if ip == -2 {
                if *rp != negate(r) {
                    return Err(format!("{r:?}, {rp:?} have inner product -2"));
                }
                opposite += 1;
            }
            if ip < -1 {
                continue;
            }
            pairs += 1;
            for sign in [Sign::Plus, Sign::Minus] {
                let w = positivity_search(r, rp, sign, 30)
                    .ok_or_else(|| format!("no word for {r:?}, {rp:?} ({sign:?})"))?;
                if w.len() > 30 {
                    return Err(format!("word of length {}", w.len()));
                }
                let (a, b) = (w.apply(r), w.apply(rp));
                let ok = match sign {
                    Sign::Plus => is_positive(&a) && is_positive(&b),
                    Sign::Minus => is_positive(&negate(&a)) && is_positive(&negate(&b)),
                };
                if !ok {
                    return Err(format!("word {:?} does not work for {r:?}, {rp:?}", w.0));
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, {opposite} opposite pairs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "closed form equals stepwise mass, k = 3..200",
            Duration::from_secs(30),
            closed_vs_stepwise,
        ),
        (
            "E8 genus mass is 1/696729600",
            Duration::from_secs(1),
            e8_anchor,
        ),
        (
            "bound constant in [2.17e-19, 2.19e-19] and above 2.1e-19",
            Duration::from_secs(1),
            theorem_constant_check,
        ),
        (
            "predicted complement genus exists, mutants rejected",
            Duration::from_secs(10),
            || verify::genus_existence(200),
        ),
        (
            "pair span symbols match the case table",
            Duration::from_secs(30),
            || verify::l_symbol_table(200),
        ),
        (
            "explicit embeddings for k = 3..7",
            Duration::from_secs(120),
            || verify::embedding_pipeline(7, 60),
        ),
        (
            "discriminant action, k = 3..50",
            Duration::from_secs(10),
            || verify::discriminant_action(50),
        ),
        (
            "prenilpotent pairs of height <= 4 have words",
            Duration::from_secs(120),
            prenilpotent_words,
        ),
        (
            "zeta_d(4) above 2 - pi^4/90, k = 3..200",
            Duration::from_secs(10),
            || verify::zeta_floor(200),
        ),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took longer than {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {}: {status} {name} ({:.2}s) {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
