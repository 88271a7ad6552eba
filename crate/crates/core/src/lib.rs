//! Foldable seeds of Grassmannian cluster algebras `C[Gr(2r,n)]`, their
//! folding equations, and numeric/exact checks of the D=3 dual-conformal
//! constraints on momentum-twistor kinematics.

pub mod error;
pub mod folding;
pub mod kinematics;
pub mod linalg;
pub mod monomial;
pub mod quiver;
pub mod seeds;
pub mod tableaux;

pub use error::{Error, Result};
pub use linalg::{Matrix, RationalMatrix, Scalar};
pub use monomial::Monomial;
pub use quiver::{Position, Quiver, QuiverJson, Vertex, VertexId};
pub use seeds::{check_exchanges, initial_label, initial_seed, plucker_eval, verify_exchange, ExchangeRecord, Grid, Seed, SeedJson};
pub use tableaux::{dominance_compare, Dominance, Partition, Tableau};
pub use folding::{
    closed_form_equations, fold_schedule, foldable_seed, run_schedule, x_identification_equations, EquationForm,
    FoldReport, FoldRun, Schedule, ScheduleVariant,
};
pub use kinematics::{run_d3_suite, run_d4_control, KinematicsSample, ResidualReport};
