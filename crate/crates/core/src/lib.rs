//! Equilibrium solver for a two-stage triathlon contest.
//!
//! After the swim every athlete decides whether to continue or withdraw.
//! Those who continue play a Tullock contest over bike-run effort, where
//! swim drafting lowers the quadratic effort cost through the multiplier
//! `psi = 1 / (1 - eta D)`.
//!
//! * [`model`]: athletes, field parameters and the primitive maps.
//! * [`stage2`]: the unique interior contest equilibrium for a fixed set of
//!   continuers, closed forms and a Nash-deviation oracle.
//! * [`stage1`]: continuation values, drafting cutoffs, equilibrium
//!   continuation sets and assembled subgame-perfect equilibria.
//! * [`analysis`]: comparative statics, welfare, sweeps and predictions.
//! * [`scenario`]: the JSON scenario document.
//! * [`cli`]: the `tricontest` command line.
//!
//! ```
//! use triathlon_contest::stage2::{solve_stage2, ContestInstance, SolverSettings};
//!
//! let contest = ContestInstance::symmetric(2, 1.0, 1.0, 1.0).unwrap();
//! let eq = solve_stage2(&contest, &SolverSettings::default()).unwrap();
//! assert!((eq.efforts[0] - 0.5).abs() < 1e-12);
//! assert!((eq.continuation_values[0] - 0.375).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod cli;
pub mod error;
pub mod model;
pub mod scenario;
pub mod stage1;
pub mod stage2;

pub use error::{Error, Result};
pub use model::{AthleteRecord, GlobalParams, Scenario};
pub use stage1::{ContinuationSet, Stage1Solver};
pub use stage2::{ContestInstance, ContestMember, SolverSettings, Stage2Equilibrium};
