//! Oracle checks run by `permqm verify`.

use std::io::Write;
use std::time::Instant;

use permqm::dynamics::{
    brute_force_dominant, dominant_evolution, halving_steps, prob_step_density, prob_step_float,
    prob_step_weighted, prob_step_weighted_exact, uniform_weights, unitary_of, SmoothFamily,
    WeightScheme,
};
use permqm::exactnum::BigRational;
use permqm::perm::Permutation;
use permqm::repstate::{state_density, NaturalVector, Representation};
use permqm::rng::stream;
use permqm::spectrum::{eigenphase_deviation, DEFAULT_MATRIX_CAP};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn new(passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            passed,
            detail: detail.into(),
        }
    }
}

pub struct Check {
    pub name: String,
    run: Box<dyn Fn() -> CheckOutcome + Send + Sync>,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        run: impl Fn() -> CheckOutcome + Send + Sync + 'static,
    ) -> Self {
        Check {
            name: name.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> CheckOutcome {
        (self.run)()
    }
}

pub const REPS: [Representation; 2] = [Representation::Natural, Representation::Standard];
pub const CMAXES: [u64; 3] = [1, 9, 1_000_000];

/// Seed for the smooth families of the Lagrangian check, fixed before the
/// check was first run.
pub const LAGRANGIAN_SEED: u64 = 0;

/// Closed-form against exhaustive dominance for `N = 2..=7`, every `cmax`
/// in [`CMAXES`] and both representations, `pairs` pairs per cell.
pub fn dominance_oracle(seed: u64, pairs: usize) -> CheckOutcome {
    let cells: Vec<(usize, u64, Representation, usize)> = (2..=7)
        .flat_map(|n| {
            CMAXES.iter().flat_map(move |&c| {
                REPS.iter()
                    .flat_map(move |&r| (0..pairs).map(move |k| (n, c, r, k)))
            })
        })
        .collect();
    let mismatches: Vec<String> = cells
        .par_iter()
        .enumerate()
        .filter_map(|(i, &(degree, cmax, rep, _))| {
            let mut rng = stream(seed, i as u64);
            let n = NaturalVector::random(degree, cmax, &mut rng).ok()?;
            let m = NaturalVector::random(degree, cmax, &mut rng).ok()?;
            let closed = dominant_evolution(&n, &m, rep).map(|d| d.probability);
            let brute = brute_force_dominant(&n, &m, rep).map(|b| b.result.probability);
            match (closed, brute) {
                (Ok(a), Ok(b)) if a == b => None,
                (a, b) => Some(format!(
                    "n=({n}) m=({m}) {}: {a:?} vs {b:?}",
                    rep.short_name()
                )),
            }
        })
        .collect();
    CheckOutcome::new(
        mismatches.is_empty(),
        match mismatches.first() {
            None => format!("{} pairs, exact equality", cells.len()),
            Some(first) => format!(
                "{} of {} pairs differ, e.g. {first}",
                mismatches.len(),
                cells.len()
            ),
        },
    )
}

/// Numeric eigenphases of permutation matrices against the exact levels:
/// all of S_6 and `random12` random elements of S_12.
pub fn eigenphase_oracle(seed: u64, random12: usize) -> CheckOutcome {
    let mut perms: Vec<Permutation> = Permutation::all(6).collect();
    let mut rng = stream(seed, 0);
    perms.extend((0..random12).map(|_| Permutation::random(12, &mut rng).expect("degree 12")));
    let mut worst = 0.0f64;
    for p in &perms {
        match eigenphase_deviation(p, DEFAULT_MATRIX_CAP) {
            Ok(d) => worst = worst.max(d),
            Err(e) => return CheckOutcome::new(false, format!("{p}: {e}")),
        }
    }
    CheckOutcome::new(
        worst < 1e-9,
        format!(
            "{} permutations, max deviation {worst:.1e} (tol 1e-9)",
            perms.len()
        ),
    )
}

/// Exact step probability against `tr(UρU†ρ')` on `count` random instances.
pub fn born_consistency(seed: u64, count: usize) -> CheckOutcome {
    let mut rng = stream(seed, 1);
    let mut worst = 0.0f64;
    for i in 0..count {
        let degree = rng.random_range(2..=20);
        let rep = REPS[i % 2];
        let cmax = CMAXES[rng.random_range(0..CMAXES.len())];
        let (Ok(n), Ok(m), Ok(u)) = (
            NaturalVector::random(degree, cmax, &mut rng),
            NaturalVector::random(degree, cmax, &mut rng),
            Permutation::random(degree, &mut rng),
        ) else {
            return CheckOutcome::new(false, "instance generation failed");
        };
        let exact = prob_step_float(&u, &n, &m, rep);
        let float = state_density(&n, rep).and_then(|a| {
            state_density(&m, rep).and_then(|b| prob_step_density(&unitary_of(&u), &a, &b))
        });
        match (exact, float) {
            (Ok(a), Ok(b)) => worst = worst.max((a - b).abs()),
            (a, b) => return CheckOutcome::new(false, format!("{a:?} / {b:?}")),
        }
    }
    CheckOutcome::new(
        worst < 1e-10,
        format!("{count} instances, max |Δ| {worst:.1e} (tol 1e-10)"),
    )
}

/// Uniform weighting over S_3 for `n = (2,1,1)`, `m = (0,1,3)`: exact sum
/// against enumeration, and a Monte Carlo estimate within three standard
/// errors.
pub fn weighted_enumeration(seed: u64, samples: usize) -> CheckOutcome {
    let n = NaturalVector::from_u64s(&[2, 1, 1]).expect("valid");
    let m = NaturalVector::from_u64s(&[0, 1, 3]).expect("valid");
    let rep = Representation::Standard;
    let run = || -> permqm::Result<(BigRational, BigRational, f64, f64)> {
        let exact = prob_step_weighted_exact(&uniform_weights(3)?, &n, &m, rep)?;
        let mut by_hand = BigRational::from_integer(0.into());
        for p in Permutation::all(3) {
            by_hand += permqm::dynamics::prob_step(&p, &n, &m, rep)?;
        }
        by_hand /= BigRational::from_integer(6.into());
        let (a, b) = (state_density(&n, rep)?, state_density(&m, rep)?);
        let mc = prob_step_weighted(&WeightScheme::uniform(samples, seed)?, &a, &b)?;
        Ok((
            exact,
            by_hand,
            mc.value,
            mc.std_error.unwrap_or(f64::INFINITY),
        ))
    };
    match run() {
        Ok((exact, by_hand, mc, se)) => {
            let target = permqm::exactnum::rational_to_f64(&exact);
            let ok = exact == by_hand && (mc - target).abs() <= 3.0 * se;
            CheckOutcome::new(
                ok,
                format!("exact {exact} (enumeration {by_hand}), MC {mc:.4} ± {se:.4}"),
            )
        }
        Err(e) => CheckOutcome::new(false, e.to_string()),
    }
}

/// Residuals `|-ln P(Δt) - LΔt²|` for `families` random smooth families of
/// dimension 3..=6; each halving of `Δt` must shrink the residual by at
/// least 6.
pub fn lagrangian_convergence(seed: u64, families: usize) -> CheckOutcome {
    let dts = halving_steps();
    let mut failing = Vec::new();
    let mut worst = f64::INFINITY;
    for i in 0..families {
        let mut rng = stream(seed, i as u64);
        let dim = rng.random_range(3..=6);
        let fam = SmoothFamily::random(dim, &mut rng);
        let r = match fam.residuals(&dts) {
            Ok(r) => r,
            Err(e) => return CheckOutcome::new(false, e.to_string()),
        };
        let ratios: Vec<f64> = r.windows(2).map(|w| w[0] / w[1]).collect();
        let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        worst = worst.min(min);
        if !(min >= 6.0) {
            let shown: Vec<String> = ratios.iter().map(|x| format!("{x:.2}")).collect();
            failing.push(format!(
                "family {i} (dim {dim}): ratios [{}]",
                shown.join(", ")
            ));
        }
    }
    let mut detail = format!("{families} families, smallest halving ratio {worst:.2} (need ≥ 6)");
    if !failing.is_empty() {
        detail.push_str(&format!(
            "; {} failing: {}",
            failing.len(),
            failing.join("; ")
        ));
    }
    CheckOutcome::new(failing.is_empty(), detail)
}

pub fn standard_checks(seed: u64) -> Vec<Check> {
    vec![
        Check::new("dominance: closed form vs exhaustive, N 2..7", move || {
            dominance_oracle(seed, 500)
        }),
        Check::new("spectrum: eigenphases of S6 and S12", move || {
            eigenphase_oracle(seed, 100)
        }),
        Check::new("Born rule: exact vs trace formula", move || {
            born_consistency(seed, 200)
        }),
        Check::new("weighted probability: uniform over S3", move || {
            weighted_enumeration(seed, 10_000)
        }),
        Check::new("Lagrangian: third-order residual decay", || {
            lagrangian_convergence(LAGRANGIAN_SEED, 20)
        }),
    ]
}

/// Runs every check and prints a table; the error counts failures.
pub fn run_checks(checks: &[Check], out: &mut dyn Write) -> CliResult<()> {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let io = |e| CliError::io(std::path::Path::new("<stdout>"), e);
    writeln!(out, "{:width$}  result  time     detail", "check").map_err(io)?;
    let mut failed = 0;
    for c in checks {
        let start = Instant::now();
        let outcome = c.run();
        let secs = start.elapsed().as_secs_f64();
        if !outcome.passed {
            failed += 1;
        }
        let verdict = if outcome.passed { "pass" } else { "FAIL" };
        writeln!(
            out,
            "{:width$}  {verdict:6}  {secs:6.2}s  {}",
            c.name, outcome.detail
        )
        .map_err(io)?;
    }
    writeln!(
        out,
        "{} of {} checks passed",
        checks.len() - failed,
        checks.len()
    )
    .map_err(io)?;
    if failed > 0 {
        return Err(CliError::Verification(failed));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        assert!(dominance_oracle(3, 5).passed);
        assert!(eigenphase_oracle(3, 5).passed);
        assert!(born_consistency(3, 20).passed);
        assert!(weighted_enumeration(3, 2000).passed);
    }

    #[test]
    fn corrupted_comparison_fails() {
        // Compares the dominant probability with the best non-dominant one.
        let corrupted = Check::new("corrupted", || {
            let n = NaturalVector::from_u64s(&[2, 1, 1]).unwrap();
            let m = NaturalVector::from_u64s(&[0, 1, 3]).unwrap();
            let d = dominant_evolution(&n, &m, Representation::Standard).unwrap();
            let b = brute_force_dominant(&n, &m, Representation::Standard).unwrap();
            CheckOutcome::new(
                Some(d.probability) == b.result.runner_up,
                "runner-up used as maximum",
            )
        });
        let fine = Check::new("fine", || CheckOutcome::new(true, ""));
        let mut buf = Vec::new();
        let err = run_checks(&[fine, corrupted], &mut buf).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        let table = String::from_utf8(buf).unwrap();
        assert!(table.contains("FAIL"));
        assert!(table.contains("1 of 2 checks passed"));
    }
}
