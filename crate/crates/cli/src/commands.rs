use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use grfold::folding::reference::{
    check_initial_seed, compare_with_folded_reference, drawn_label_outcome, DrawnLabelOutcome, InitialCheck,
    ReferenceDiff,
};
use grfold::folding::{equation_sets_equal, EquationJson};
use grfold::kinematics::{DEFAULT_CONTROL_THRESHOLD, DEFAULT_TOLERANCE};
use grfold::{
    check_exchanges, closed_form_equations, fold_schedule, initial_seed, run_d3_suite, run_d4_control, run_schedule,
    x_identification_equations, Error, ExchangeRecord, FoldReport, Schedule, ScheduleVariant, Seed, SeedJson,
    VertexId,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::{Command, Format, Output, Source, Steps};

/// A failed run: exit 1 for verification failures, 2 for usage errors.
#[derive(Debug)]
pub struct Failure {
    usage: bool,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            usage: true,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self {
            usage: false,
            message: message.into(),
        }
    }

    pub fn report(&self) -> ExitCode {
        let kind = if self.usage { "usage" } else { "verification" };
        eprintln!("{}", json!({ "error": { "kind": kind, "message": self.message } }));
        ExitCode::from(if self.usage { 2 } else { 1 })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let usage = match &e {
            Error::Step { source, .. } => is_usage_error(source),
            other => is_usage_error(other),
        };
        Self {
            usage,
            message: e.to_string(),
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownVertex(_)
            | Error::FrozenVertex(_)
            | Error::InvalidParameters { .. }
            | Error::PositionOutOfRange(..)
            | Error::Malformed(_)
            | Error::InvalidTableau(_)
            | Error::DuplicateVertex(_)
            | Error::Json(_)
    )
}

type CmdResult = std::result::Result<(), Failure>;

pub fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Seed { shape, output } => {
            let seed = initial_seed(shape.k, shape.n)?;
            emit_seed(&seed, &output, &seed.to_json())
        }
        Command::Mutate { source, steps, output } => {
            let start = load_seed(&source)?;
            let sequence = resolve_steps(&start, &steps)?
                .ok_or_else(|| Failure::usage("mutate needs --sequence or --positions"))?;
            let (seed, exchanges) = start.apply_sequence(&sequence)?;
            #[derive(Serialize)]
            struct Doc<'a> {
                seed: SeedJson,
                exchanges: &'a [ExchangeRecord],
            }
            emit_seed(
                &seed,
                &output,
                &Doc {
                    seed: seed.to_json(),
                    exchanges: &exchanges,
                },
            )
        }
        Command::Fold { shape, variant, output } => fold(shape.k, shape.n, variant.into(), &output),
        Command::VerifySeed { shape, variant, out } => verify_seed(shape.k, shape.n, variant.into(), out.as_deref()),
        Command::VerifyExchange {
            shape,
            steps,
            variant,
            trials,
            rng_seed,
            out,
        } => verify_exchange(shape.k, shape.n, &steps, variant.into(), trials, rng_seed, out.as_deref()),
        Command::VerifyKinematics {
            n,
            dim,
            trials,
            tol,
            rng_seed,
            out,
        } => {
            if trials == 0 {
                return Err(Failure::usage("--trials must be positive"));
            }
            if tol.is_some_and(|t| !(t.is_finite() && t > 0.0)) {
                return Err(Failure::usage("--tol must be a positive number"));
            }
            let report = if dim == 3 {
                run_d3_suite(n, trials, tol.unwrap_or(DEFAULT_TOLERANCE), rng_seed)?
            } else {
                run_d4_control(n, trials, tol.unwrap_or(DEFAULT_CONTROL_THRESHOLD), rng_seed)?
            };
            write_output(out.as_deref(), &to_json(&report)?)?;
            check_pass(report.pass, format!("D={dim} kinematics check failed for n={n}"))
        }
        Command::ExportDot {
            source,
            steps,
            fold,
            out,
        } => {
            let seed = if fold {
                let (k, n) = source.k.zip(source.n).ok_or_else(|| Failure::usage("--fold needs --k and --n"))?;
                run_schedule(k, n, ScheduleVariant::Uniform)?.seed
            } else {
                let start = load_seed(&source)?;
                match resolve_steps(&start, &steps)? {
                    Some(seq) => start.apply_sequence(&seq)?.0,
                    None => start,
                }
            };
            write_output(out.as_deref(), &seed.to_dot())
        }
    }
}

fn fold(k: usize, n: usize, variant: ScheduleVariant, output: &Output) -> CmdResult {
    let run = run_schedule(k, n, variant)?;
    let foldable = run.report.is_foldable();
    let equations: Vec<EquationJson> = if k == 4 && foldable {
        x_identification_equations(&run.seed)?.iter().map(EquationJson::from).collect()
    } else {
        Vec::new()
    };
    #[derive(Serialize)]
    struct Doc<'a> {
        schedule: &'a Schedule,
        seed: SeedJson,
        report: &'a FoldReport,
        equations: Vec<EquationJson>,
    }
    let doc = Doc {
        schedule: &run.schedule,
        seed: run.seed.to_json(),
        report: &run.report,
        equations,
    };
    emit_seed(&run.seed, output, &doc)?;
    check_pass(foldable, format!("Gr({k},{n}) {variant:?} schedule does not reach a foldable seed"))
}

#[derive(Serialize)]
struct EquationCheck {
    count: usize,
    all_net_positive: bool,
    matches_closed_form: bool,
}

#[derive(Serialize)]
struct SeedVerification {
    k: usize,
    n: usize,
    schedule: Vec<VertexId>,
    initial: InitialCheck,
    fold: FoldReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<ReferenceDiff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    drawn_labels: Option<DrawnLabelOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equations: Option<EquationCheck>,
    pass: bool,
}

fn verify_seed(k: usize, n: usize, variant: ScheduleVariant, out: Option<&Path>) -> CmdResult {
    let initial = check_initial_seed(&initial_seed(k, n)?)?;
    let run = run_schedule(k, n, variant)?;
    let foldable = run.report.is_foldable();
    let (reference, drawn_labels) = if (k, n) == (4, 9) {
        (Some(compare_with_folded_reference(&run.seed)?), Some(drawn_label_outcome()?))
    } else {
        (None, None)
    };
    let equations = if k == 4 && foldable {
        let eqs = x_identification_equations(&run.seed)?;
        Some(EquationCheck {
            count: eqs.len(),
            all_net_positive: eqs.iter().all(|e| e.net_sign() == 1),
            matches_closed_form: equation_sets_equal(&eqs, &closed_form_equations(n)?),
        })
    } else {
        None
    };
    let pass = initial.is_match()
        && foldable
        && reference.as_ref().is_none_or(ReferenceDiff::is_match)
        && equations
            .as_ref()
            .is_none_or(|e| e.all_net_positive && e.matches_closed_form);
    let report = SeedVerification {
        k,
        n,
        schedule: run.schedule.vertices,
        initial,
        fold: run.report,
        reference,
        drawn_labels,
        equations,
        pass,
    };
    write_output(out, &to_json(&report)?)?;
    check_pass(pass, format!("Gr({k},{n}) seed verification failed"))
}

fn verify_exchange(
    k: usize,
    n: usize,
    steps: &Steps,
    variant: ScheduleVariant,
    trials: usize,
    rng_seed: u64,
    out: Option<&Path>,
) -> CmdResult {
    if trials == 0 {
        return Err(Failure::usage("--trials must be positive"));
    }
    let start = initial_seed(k, n)?;
    let sequence = match resolve_steps(&start, steps)? {
        Some(seq) => seq,
        None => fold_schedule(k, n, variant)?.vertices,
    };
    let (_, records) = start.apply_sequence(&sequence)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let failures = check_exchanges(&records, k, n, trials, &mut rng)?;
    let failed: Vec<_> = failures
        .iter()
        .map(|&(step, trial)| json!({ "step": step, "vertex": records[step].vertex, "trial": trial }))
        .collect();
    let pass = failures.is_empty();
    let report = json!({
        "k": k,
        "n": n,
        "sequence": sequence,
        "exchanges": records.len(),
        "trials": trials,
        "rng_seed": rng_seed,
        "failures": failed,
        "pass": pass,
    });
    write_output(out, &to_json(&report)?)?;
    check_pass(pass, format!("{} exchange relation checks failed", failures.len()))
}

fn check_pass(pass: bool, message: String) -> CmdResult {
    if pass {
        Ok(())
    } else {
        Err(Failure::verification(message))
    }
}

fn load_seed(source: &Source) -> Result<Seed, Failure> {
    if let Some(path) = &source.input {
        let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
        // Accept a bare seed or any document with a "seed" field.
        let value = match value.get("seed") {
            Some(inner) => inner.clone(),
            None => value,
        };
        let json: SeedJson = serde_json::from_value(value).map_err(Error::from)?;
        return Ok(Seed::from_json(&json)?);
    }
    match (source.k, source.n) {
        (Some(k), Some(n)) => Ok(initial_seed(k, n)?),
        _ => Err(Failure::usage("either --input or both --k and --n are required")),
    }
}

fn resolve_steps(seed: &Seed, steps: &Steps) -> Result<Option<Vec<VertexId>>, Failure> {
    if let Some(ids) = &steps.sequence {
        return Ok(Some(ids.iter().map(|&i| VertexId(i)).collect()));
    }
    let Some(text) = &steps.positions else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for pair in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Failure::usage(format!("bad position {pair:?}; expected row,col"));
        let inner = pair.trim_start_matches('(').trim_end_matches(')');
        let (r, c) = inner.split_once(',').ok_or_else(bad)?;
        let r: usize = r.trim().parse().map_err(|_| bad())?;
        let c: usize = c.trim().parse().map_err(|_| bad())?;
        out.push(seed.id_at((r, c))?);
    }
    if out.is_empty() {
        return Err(Failure::usage("--positions is empty"));
    }
    Ok(Some(out))
}

fn emit_seed<T: Serialize>(seed: &Seed, output: &Output, doc: &T) -> CmdResult {
    let text = match output.format {
        Format::Json => to_json(doc)?,
        Format::Dot => seed.to_dot(),
    };
    write_output(output.out.as_deref(), &text)
}

fn to_json<T: Serialize>(doc: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(doc).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn write_output(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", PathBuf::from(path).display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
