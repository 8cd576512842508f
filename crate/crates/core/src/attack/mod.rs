//! Key-space search attacks on toy ciphers: scenario modeling, the four
//! designer decisions, classical-walk and Grover execution, and
//! theory-vs-measurement reconciliation.

mod cipher;
mod plan;
mod run;
mod scenario;

pub use cipher::{
    Block, Key, ToyCipher, SPN16_PERMUTATION, SPN16_SBOX, SPN16_SBOX_INV,
};
pub use plan::{plan_attack, AttackPlan, SearchPolicy};
pub use run::{run_attack, speedup_report, AttackReport, SpeedupReport};
pub use scenario::{marked_flags, marked_keys, AttackScenario, KeySubset, PlaintextModel};
