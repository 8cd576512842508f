//! Random-walk and quantum-walk search over finite spaces, and the attack
//! harness that turns key recovery into exactly that search problem.
//!
//! Four pieces fit together:
//!
//! * [`markov`] — uniform walks on a finite set with marked absorbing
//!   targets: the transition block form, absorption probabilities and times
//!   from the fundamental-matrix systems, first-passage and n-step
//!   probabilities, stationary distributions, and seeded Monte Carlo
//!   counterparts for every solver output.
//! * [`qwalk`] — the discrete-time Hadamard walk on the line, with an exact
//!   dyadic-rational mode for table-level checks and the binomial closed
//!   form for the `|0>(x)|0>` start.
//! * [`grover`] — statevector Grover search with a predicate oracle, the
//!   `floor(pi/4 sqrt(n/m))` iteration rule and its sin^2 closed form.
//! * [`attack`] — toy ciphers, attack scenarios, the designer decisions
//!   (subset, start, budget, repetitions), and reconciliation of measured
//!   against predicted behavior for both engines.
//!
//! All randomness flows through per-trial ChaCha streams ([`rng`]), so every
//! estimate in the crate is reproducible bit-for-bit from `(seed, trials)`.

pub mod attack;
mod error;
pub mod grover;
pub mod linalg;
pub mod markov;
pub mod qwalk;
pub mod rng;

pub use error::{Error, Result};
