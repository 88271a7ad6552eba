//! Multi-trial verification runs with aggregated residuals.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::folding::{closed_form_equations, folding_pairs, foldable_seed, run_schedule, x_identification_equations, ScheduleVariant};
use crate::linalg::Scalar;
use crate::seeds::{verify_exchange, ExchangeRecord};

use super::checks::{
    check_bracket_identity, check_d3_consecutive, check_two_point_trace, check_xij, evaluate_equation,
    folding_identity, relative_residual, s_quantity,
};
use super::sample::{conservation_residual, sample_d3, sample_d4_twistors, sample_from_twistors, KinematicsSample, DEFAULT_RESAMPLE_LIMIT};
use super::spinor::Mat2;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_CONTROL_THRESHOLD: f64 = 1e-3;
/// Fraction of trials that must violate each folding equation in the D=4 control.
pub const CONTROL_VIOLATION_RATE: f64 = 0.95;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    /// Residual at most the tolerance in every instance.
    Holds,
    /// Exact equality in every instance.
    Exact,
    /// Residual above the threshold in enough trials.
    Violated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityStats {
    pub expect: Expectation,
    pub instances: usize,
    pub max: f64,
    pub median: f64,
    /// Fraction of trials above the threshold (violation checks only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation_rate: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub dim: u8,
    pub n: usize,
    pub trials: usize,
    pub rng_seed: u64,
    /// Tolerance for `holds` checks, threshold for `violated` checks.
    pub tolerance: f64,
    pub resamples: usize,
    pub identities: BTreeMap<String, IdentityStats>,
    pub pass: bool,
}

fn median(sorted: &[f64]) -> f64 {
    match sorted.len() {
        0 => 0.0,
        len if len % 2 == 1 => sorted[len / 2],
        len => 0.5 * (sorted[len / 2 - 1] + sorted[len / 2]),
    }
}

fn summarize(expect: Expectation, mut values: Vec<f64>, tol: f64, per_trial: Option<&[f64]>) -> IdentityStats {
    values.sort_by(f64::total_cmp);
    let max = values.last().copied().unwrap_or(0.0);
    let (violation_rate, pass) = match expect {
        Expectation::Holds => (None, max <= tol),
        Expectation::Exact => (None, max == 0.0),
        Expectation::Violated => {
            let trials = per_trial.unwrap_or(&values);
            let rate = trials.iter().filter(|&&r| r > tol).count() as f64 / trials.len().max(1) as f64;
            (Some(rate), rate >= CONTROL_VIOLATION_RATE)
        }
    };
    IdentityStats {
        expect,
        instances: values.len(),
        max,
        median: median(&values),
        violation_rate,
        pass,
    }
}

/// Per-trial RNG: the master seed with the trial index as stream.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

type Residuals = BTreeMap<&'static str, Vec<f64>>;

fn push(map: &mut Residuals, key: &'static str, v: f64) {
    map.entry(key).or_default().push(v);
}

fn d3_trial(s: &KinematicsSample<Complex64>, equations: &[crate::folding::EquationForm]) -> Result<Residuals> {
    let n = s.n as i64;
    let mut r = Residuals::new();
    push(&mut r, "momentum_conservation", conservation_residual(&s.lambdas));
    let end = &s.duals[s.n - 1] + &Mat2::outer(&s.lambdas[s.n - 1], &s.lambdas[s.n - 1]);
    let pmax = s
        .lambdas
        .iter()
        .map(|l| Mat2::outer(l, l).norm())
        .fold(0.0, f64::max);
    push(&mut r, "dual_closure", (&end - &s.duals[0]).norm() / pmax);
    for i in 1..=n {
        let x = s.dual(i);
        push(&mut r, "dual_symmetric", relative_residual(&x.0[0][1], &x.0[1][0]));
        for j in 1..=n {
            push(&mut r, "xij", check_xij(s, i, j)?.residual());
            if i != j {
                push(&mut r, "two_point_trace", check_two_point_trace(s, i, j)?.residual());
            }
            for k in 1..=n {
                push(&mut r, "bracket", check_bracket_identity(s, i, k, j)?.residual());
            }
        }
        push(&mut r, "consecutive_brackets", check_d3_consecutive(s, i)?.residual());
    }
    for a in 1..=n {
        for gap in 3..=n - 3 {
            let q = s_quantity(s, a, a + gap)?;
            push(&mut r, "s_form_a", relative_residual(&q.direct, &q.form_a));
            push(&mut r, "s_form_b", relative_residual(&q.direct, &q.form_b));
        }
    }
    for (a, c) in folding_pairs(s.n) {
        push(&mut r, "folding_family", folding_identity(s, a, c)?.residual());
    }
    for eq in equations {
        push(&mut r, "folding_equations", evaluate_equation(s, eq)?.residual());
    }
    Ok(r)
}

fn merge(results: Vec<Residuals>) -> Residuals {
    let mut all = Residuals::new();
    for r in results {
        for (k, mut v) in r {
            all.entry(k).or_default().append(&mut v);
        }
    }
    all
}

/// Every D=3 identity over `trials` independent samples.
pub fn run_d3_suite(n: usize, trials: usize, tol: f64, rng_seed: u64) -> Result<ResidualReport> {
    let equations = x_identification_equations(&foldable_seed(4, n)?)?;
    let outcomes: Vec<Result<(Residuals, usize)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(rng_seed, t);
            let (s, resamples) = sample_d3(n, &mut rng, DEFAULT_RESAMPLE_LIMIT)?;
            Ok((d3_trial(&s, &equations)?, resamples))
        })
        .collect();
    let mut resamples = 0;
    let mut per_trial = Vec::with_capacity(trials);
    for o in outcomes {
        let (r, c) = o?;
        resamples += c;
        per_trial.push(r);
    }
    let identities: BTreeMap<String, IdentityStats> = merge(per_trial)
        .into_iter()
        .map(|(k, v)| (k.to_string(), summarize(Expectation::Holds, v, tol, None)))
        .collect();
    let pass = trials > 0 && identities.values().all(|s| s.pass);
    Ok(ResidualReport {
        dim: 3,
        n,
        trials,
        rng_seed,
        tolerance: tol,
        resamples,
        identities,
        pass,
    })
}

/// All three-term relations `P_{Sac}P_{Sbd} = P_{Sab}P_{Scd} + P_{Sad}P_{Sbc}`
/// of a `4 x n` matrix. Returns `(checked, failed)`.
pub fn three_term_relations_hold<S: Scalar>(m: &crate::linalg::Matrix<S>) -> Result<(usize, usize)> {
    if m.rows() != 4 {
        return Err(Error::Arity {
            expected: 4,
            got: m.rows(),
        });
    }
    let n = m.cols() as u32;
    let mut minors = std::collections::HashMap::new();
    for q in super::sample::four_subsets(n as usize) {
        minors.insert(q, m.minor(&q.map(|i| i as usize - 1)));
    }
    let p = |idx: [u32; 4]| -> S {
        let mut sorted = idx;
        sorted.sort_unstable();
        let v = minors[&sorted].clone();
        if crate::linalg::sort_sign(&idx) == Some(-1) {
            -v
        } else {
            v
        }
    };
    let mut checked = 0;
    let mut failed = 0;
    for s1 in 1..=n {
        for s2 in s1 + 1..=n {
            let rest: Vec<u32> = (1..=n).filter(|&i| i != s1 && i != s2).collect();
            for (ia, &a) in rest.iter().enumerate() {
                for (ib, &b) in rest.iter().enumerate().skip(ia + 1) {
                    for (ic, &c) in rest.iter().enumerate().skip(ib + 1) {
                        for &d in rest.iter().skip(ic + 1) {
                            let lhs = p([s1, s2, a, c]) * p([s1, s2, b, d]);
                            let rhs = p([s1, s2, a, b]) * p([s1, s2, c, d]) + p([s1, s2, a, d]) * p([s1, s2, b, c]);
                            checked += 1;
                            if lhs != rhs {
                                failed += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((checked, failed))
}

struct ControlTrial {
    equations: Vec<f64>,
    family: Vec<f64>,
    exact_failures: BTreeMap<&'static str, (usize, usize)>,
    consecutive: Vec<f64>,
}

fn d4_trial(
    z: crate::linalg::Matrix<BigRational>,
    equations: &[crate::folding::EquationForm],
    records: &[ExchangeRecord],
) -> Result<ControlTrial> {
    let mut exact = BTreeMap::new();
    exact.insert("plucker_three_term", three_term_relations_hold(&z)?);
    let mut bad = 0;
    for rec in records {
        if !verify_exchange(rec, &z)? {
            bad += 1;
        }
    }
    exact.insert("exchange_relations", (records.len(), bad));
    let s = sample_from_twistors(z)?;
    let n = s.n as i64;
    let mut checked = 0;
    let mut bad = 0;
    for i in 1..=n {
        for j in 1..=n {
            checked += 1;
            if !check_xij(&s, i, j)?.holds_exactly() {
                bad += 1;
            }
        }
    }
    exact.insert("xij_exact", (checked, bad));
    let eqs = equations
        .iter()
        .map(|e| evaluate_equation(&s, e).map(|v| v.residual()))
        .collect::<Result<_>>()?;
    let family = folding_pairs(s.n)
        .into_iter()
        .map(|(a, c)| folding_identity(&s, a, c).map(|v| v.residual()))
        .collect::<Result<_>>()?;
    let consecutive = (1..=n)
        .map(|a| super::checks::consecutive_identity(&s, a).residual())
        .collect();
    Ok(ControlTrial {
        equations: eqs,
        family,
        exact_failures: exact,
        consecutive,
    })
}

/// Random rational twistors: the folding equations must fail while every
/// identity valid in D=4 holds exactly.
pub fn run_d4_control(n: usize, trials: usize, threshold: f64, rng_seed: u64) -> Result<ResidualReport> {
    let equations = closed_form_equations(n)?;
    let records = run_schedule(4, n, ScheduleVariant::Uniform)?.records;
    let outcomes: Vec<Result<(ControlTrial, usize)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(rng_seed, t);
            let (z, resamples) = sample_d4_twistors(n, &mut rng, DEFAULT_RESAMPLE_LIMIT)?;
            Ok((d4_trial(z, &equations, &records)?, resamples))
        })
        .collect();
    let mut resamples = 0;
    let mut trials_out = Vec::with_capacity(trials);
    for o in outcomes {
        let (t, c) = o?;
        resamples += c;
        trials_out.push(t);
    }
    if trials_out.is_empty() {
        return Err(Error::Malformed("at least one trial is required".into()));
    }
    let mut identities = BTreeMap::new();
    for (e, eq) in equations.iter().enumerate() {
        let per: Vec<f64> = trials_out.iter().map(|t| t.equations[e]).collect();
        let stats = summarize(Expectation::Violated, per.clone(), threshold, Some(&per));
        identities.insert(format!("folding_equation_{}: {eq}", e + 1), stats);
    }
    let family: Vec<f64> = trials_out.iter().flat_map(|t| t.family.iter().copied()).collect();
    let family_median: Vec<f64> = trials_out
        .iter()
        .map(|t| {
            let mut v = t.family.clone();
            v.sort_by(f64::total_cmp);
            median(&v)
        })
        .collect();
    identities.insert(
        "folding_family".to_string(),
        summarize(Expectation::Violated, family, threshold, Some(&family_median)),
    );
    let consecutive: Vec<f64> = trials_out.iter().flat_map(|t| t.consecutive.iter().copied()).collect();
    let consecutive_median: Vec<f64> = trials_out
        .iter()
        .map(|t| {
            let mut v = t.consecutive.clone();
            v.sort_by(f64::total_cmp);
            median(&v)
        })
        .collect();
    identities.insert(
        "consecutive_brackets".to_string(),
        summarize(Expectation::Violated, consecutive, threshold, Some(&consecutive_median)),
    );
    for key in ["plucker_three_term", "exchange_relations", "xij_exact"] {
        let (checked, failed) = trials_out
            .iter()
            .map(|t| t.exact_failures[key])
            .fold((0, 0), |acc, (c, f)| (acc.0 + c, acc.1 + f));
        let max = if failed == 0 { 0.0 } else { 1.0 };
        identities.insert(
            key.to_string(),
            IdentityStats {
                expect: Expectation::Exact,
                instances: checked,
                max,
                median: 0.0,
                violation_rate: Some(failed as f64 / checked.max(1) as f64),
                pass: failed == 0,
            },
        );
    }
    let pass = identities.values().all(|s| s.pass);
    Ok(ResidualReport {
        dim: 4,
        n,
        trials,
        rng_seed,
        tolerance: threshold,
        resamples,
        identities,
        pass,
    })
}
