//! Foldable seeds of `C[Gr(2r,n)]` and the folding equations of `Gr(4,n)`.

mod equations;
mod mesh;
mod predict;
pub mod reference;
mod schedule;
mod symbols;

use serde::Serialize;

pub use equations::{
    boundary_equation, closed_form_equation, closed_form_equations, closed_form_positions, folding_family,
    folding_pairs, general_equation, x_identification_equations, EquationJson,
};
pub use mesh::{has_column_reflection_symmetry, is_square_mesh, is_three_term_plucker};
pub use predict::{gr4_position, predicted_intervals, predicted_label, predicted_label_gr4, TwoIntervals};
pub use schedule::{column_run, fold_schedule, ColumnRun, Schedule, ScheduleVariant};
pub use symbols::{equation_sets_equal, equations_equal, Canonical, EquationForm, PluckerSymbol, RawSide};

use crate::error::{Error, Result};
use crate::seeds::{initial_seed, ExchangeRecord, Grid, Seed};

/// A schedule run from the initial seed, with shape diagnostics.
#[derive(Clone, Debug)]
pub struct FoldRun {
    pub schedule: Schedule,
    pub seed: Seed,
    pub records: Vec<ExchangeRecord>,
    pub report: FoldReport,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FoldReport {
    pub square_mesh: bool,
    pub reflection_symmetric: bool,
    pub max_multiplicity: i64,
    pub single_column: bool,
    /// Positions whose label differs from [`predicted_label`].
    pub prediction_mismatches: Vec<((usize, usize), String, String)>,
    /// Indices into the exchange list that are not three-term relations.
    pub non_three_term: Vec<usize>,
}

impl FoldReport {
    pub fn is_foldable(&self) -> bool {
        self.square_mesh
            && self.reflection_symmetric
            && self.max_multiplicity <= 1
            && self.single_column
            && self.prediction_mismatches.is_empty()
            && self.non_three_term.is_empty()
    }
}

fn report(k: usize, n: usize, seed: &Seed, records: &[ExchangeRecord]) -> Result<FoldReport> {
    let q = seed.quiver();
    let mut mismatches = Vec::new();
    for pos in Grid::new(k, n)?.positions() {
        let Some(v) = q.id_at(pos) else { continue };
        if q.is_frozen(v)? {
            continue;
        }
        let expected = predicted_label(pos.0, pos.1, k, n)?;
        let found = seed.label(v)?;
        if found.single_column().as_deref() != Some(expected.indices()) {
            mismatches.push((pos, expected.to_string(), found.to_string()));
        }
    }
    let non_three_term = records
        .iter()
        .enumerate()
        .filter(|(_, r)| !is_three_term_plucker(r, n))
        .map(|(i, _)| i)
        .collect();
    Ok(FoldReport {
        square_mesh: is_square_mesh(q),
        reflection_symmetric: has_column_reflection_symmetry(q),
        max_multiplicity: q.max_multiplicity(),
        single_column: seed.all_single_column(),
        prediction_mismatches: mismatches,
        non_three_term,
    })
}

/// Applies `fold_schedule(k, n, variant)` to the initial seed.
pub fn run_schedule(k: usize, n: usize, variant: ScheduleVariant) -> Result<FoldRun> {
    let schedule = fold_schedule(k, n, variant)?;
    let (seed, records) = initial_seed(k, n)?.apply_sequence(&schedule.vertices)?;
    let report = report(k, n, &seed, &records)?;
    Ok(FoldRun {
        schedule,
        seed,
        records,
        report,
    })
}

/// The foldable seed reached by the uniform schedule. Fails with a
/// diagnostic if the result is not a symmetric square mesh.
pub fn foldable_seed(k: usize, n: usize) -> Result<Seed> {
    let run = run_schedule(k, n, ScheduleVariant::Uniform)?;
    let r = &run.report;
    if !(r.square_mesh && r.reflection_symmetric && r.max_multiplicity <= 1 && r.single_column) {
        return Err(Error::Diagnostic(format!(
            "Gr({k},{n}) schedule did not reach a foldable seed: {}",
            serde_json::to_string(r)?
        )));
    }
    Ok(run.seed)
}
