//! Minimal-variance cyclic sequencing.
//!
//! A [`SequencingProblem`] asks for a circular arrangement of `m_k` instances
//! of each symbol `a_k`. The evenness of a [`Cycle`] is measured by the
//! moments of its forward distances, chiefly the variance. For two symbols
//! the Euclidean construction in [`esa`] returns a minimal-variance cycle
//! directly; [`optimality`] states the distance conditions that characterise
//! every such optimum, [`exact`] confirms them by exhaustion on small
//! instances, and [`miqp`] writes the equivalent integer program for external
//! solvers.

pub mod cycle;
pub mod error;
pub mod esa;
pub mod exact;
pub mod io;
pub mod metrics;
pub mod miqp;
pub mod moments;
pub mod optimality;
pub mod problem;
pub mod rational;

pub use cycle::{base_cycle, canonical_rotation, distances, Cycle, DistanceProfile};
pub use error::{Error, Result};
pub use esa::{esa_solve, gcd, solve, uniform_cycle, EsaStep, EsaTrace};
pub use exact::{enumerate_admissible, exact_min, exact_min_parallel, ExactResult, DEFAULT_CAP};
pub use metrics::{compare_report, pulse_variance, sweep, ComparisonReport};
pub use miqp::{build_model, evaluate_assignment, Evaluation, MiqpModel};
pub use moments::{central_moment, mean, raw_moment, sub_moment, variance};
pub use optimality::{
    distance_spec, is_unclustered, lower_bound, lower_bound_variance, verify_optimal, DistanceSpec, Verdict,
};
pub use problem::SequencingProblem;
pub use rational::ExactRational;
