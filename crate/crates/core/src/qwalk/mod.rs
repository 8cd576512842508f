//! Discrete-time Hadamard quantum walk on the line: direct simulation, an
//! exact dyadic-rational mode for table-level verification, and the
//! binomial-sum closed form for the `|0> (x) |0>` start.

mod closed_form;
mod exact;
mod state;

pub use closed_form::{
    closed_form_amplitudes, closed_form_distribution, MAX_CLOSED_FORM_STEPS,
};
pub use exact::{DyadicProbability, ExactWalkState};
pub use state::{InitialState, PositionDistribution, PositionProbability, QuantumWalkState};
