//! Generators, oracle conversions and law checks for the round-trip and
//! semantic specifications of the translators.
//!
//! The matrix oracle is the semantic function: laws about semantics are
//! checked only on measurement-free programs small enough to simulate, and
//! samples outside that class are reported as skipped.

mod gen;
mod laws;
mod sim;

use thiserror::Error;

use crate::semantics::SimError;

pub use gen::{gen_qasm, gen_qasm_with, gen_quip, gen_quip_with, GenConfig, MAX_WIRES};
pub use laws::{
    check_laws, legacy_pipeline, legacy_sim, shrink_qasm, shrink_quip, Corpus, Lang, Law, LawReport, LawRow, Writers,
    LAW_TOL,
};
pub use sim::{qasm_isometry, qasm_sim, quip_isometry, quip_sim, QasmSim};

#[derive(Debug, Error, PartialEq)]
pub enum HarnessError {
    #[error("program has measurements or classical wires")]
    NotUnitary,
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}
