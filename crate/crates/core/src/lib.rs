//! Laboratory for offline contextual bandits with interpolating models.
//!
//! The crate generates logged bandit data with exact propensities, trains
//! policy-based, value-based, and doubly-robust learners, diagnoses the
//! action-stability of their objectives, and estimates the
//! approximation / estimation / bandit decomposition of regret.
//!
//! Modules:
//! - [`types`]: logged interactions, datasets, action distributions, and the
//!   [`PolicyModel`] / [`QModel`] capabilities shared by everything else.
//! - [`io`]: the plain-text dataset format (bit-exact round trips).
//! - [`rng`]: seeded substream derivation for reproducible parallel runs.
//! - [`envs`]: synthetic environments, behavior policies, and the adversarial
//!   constructions used by the lower-bound experiments.
//! - [`objectives`]: training objectives and value estimators, each with a
//!   full-dataset score, per-point losses, and output-space gradients.
//! - [`learners`]: a from-scratch MLP with momentum SGD, one-nearest-neighbor
//!   policies, exact tabular interpolators, and finite-class argmax.
//! - [`stability`]: pointwise action-stability verdicts with witnesses, a
//!   brute-force oracle, the `p_u` estimator, and the TV-resampling experiment.
//! - [`analysis`]: true-value estimation, the regret-decomposition harness,
//!   and checkers for the regret bounds and identities.

pub mod analysis;
pub mod envs;
pub mod io;
pub mod learners;
pub mod objectives;
pub mod policies;
pub mod rng;
pub mod stability;
pub mod tol;
pub mod types;

pub use policies::{ConstantPolicy, GreedyFromQ, RandomHashPolicy, UniformPolicy};
pub use types::{ActionDistribution, CoreError, Dataset, LoggedInteraction, PolicyModel, QModel};
