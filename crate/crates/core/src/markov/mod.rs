//! Finite uniform random walks with marked absorbing targets: transition
//! matrices, state classification, absorption probabilities and times,
//! n-step and first-passage probabilities, stationary distributions, and
//! seeded Monte Carlo counterparts for all of it.

mod classify;
mod matrix;
mod monte_carlo;
mod walk;

pub use classify::StateClassification;
pub use matrix::{TransitionMatrix, ROW_SUM_TOL};
pub use monte_carlo::{
    absorption_stats, estimate_cover_time, geometric_hit_time, simulate_trajectory,
    AbsorptionStats, CoverTimeEstimate, WalkTrajectory,
};
pub use walk::{MarkedWalk, UniformWalkLaw, MAX_DENSE_STATES};
