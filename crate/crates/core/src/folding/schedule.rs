//! Mutation schedules that turn the rectangular initial seed of
//! `C[Gr(2r,n)]` into the foldable square-mesh seed.
//!
//! A schedule is a list of column runs `C(j,t)`: mutate `(1,j), (2,j), ..., (t,j)`
//! top to bottom. Runs are emitted in blocks sweeping columns `k-1, ..., 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::VertexId;
use crate::seeds::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleVariant {
    /// Block `b` runs column `j` to depth `l - max(0, 2b - j + 1)`.
    #[default]
    Uniform,
    /// Blocks `1..r-1` as in `Uniform`, then rows whose depths drop by one.
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRun {
    pub column: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub k: usize,
    pub n: usize,
    pub variant: ScheduleVariant,
    pub runs: Vec<ColumnRun>,
    pub vertices: Vec<VertexId>,
}

/// Vertices of the run `C(column, target)`; empty when `target <= 0`.
pub fn column_run(column: usize, target: i64, k: usize, n: usize) -> Result<Vec<VertexId>> {
    let grid = Grid::new(k, n)?;
    if column == 0 || column > grid.mutable_cols() {
        return Err(Error::PositionOutOfRange(1, column));
    }
    let depth = target.clamp(0, grid.mutable_rows() as i64) as usize;
    Ok((1..=depth)
        .map(|i| grid.id((i, column)).expect("mutable position"))
        .collect())
}

fn validate(k: usize, n: usize) -> Result<Grid> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParameters {
            k,
            n,
            reason: "k must be even and at least 4".into(),
        });
    }
    Grid::new(k, n)
}

/// Depth of column `j` in block `b` (or phase-2 row) of the schedule.
fn depths(k: usize, ell: i64, variant: ScheduleVariant) -> impl Iterator<Item = Vec<(usize, i64)>> {
    let r = (k / 2) as i64;
    (1i64..).map(move |b| {
        (1..k)
            .rev()
            .map(|j| {
                let jj = j as i64;
                let deficit = match variant {
                    ScheduleVariant::Uniform => (2 * b - jj + 1).max(0),
                    ScheduleVariant::Literal if b < r => (2 * b - jj + 1).max(0),
                    ScheduleVariant::Literal => (k as i64 - 1 - jj) + (b - r + 1),
                };
                (j, ell - deficit)
            })
            .collect()
    })
}

pub fn fold_schedule(k: usize, n: usize, variant: ScheduleVariant) -> Result<Schedule> {
    let grid = validate(k, n)?;
    let ell = grid.mutable_rows() as i64;
    let mut runs = Vec::new();
    let mut vertices = Vec::new();
    for block in depths(k, ell, variant) {
        let live: Vec<_> = block.into_iter().filter(|&(_, t)| t >= 1).collect();
        if live.is_empty() {
            break;
        }
        for (column, target) in live {
            vertices.extend(column_run(column, target, k, n)?);
            runs.push(ColumnRun {
                column,
                target: target as usize,
            });
        }
    }
    Ok(Schedule {
        k,
        n,
        variant,
        runs,
        vertices,
    })
}
