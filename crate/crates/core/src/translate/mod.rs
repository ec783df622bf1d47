//! Translation between Quipper circuits and OpenQASM 3 programs.
//!
//! Quipper wires are typed and may be created and destroyed mid-circuit;
//! OpenQASM registers are neither. Input wires become `input_qwires` and
//! `input_cwires`, every ancilla lifetime a fresh `qtmp_k` register, and
//! measurement results `ctmp_k` registers. The ancilla operations are kept
//! as calls to the functions of `quipfuncs.inc`, which the reverse direction
//! maps back to native gates.

pub mod dfa;
pub mod shadow;
mod to_qasm;
mod to_quip;

use thiserror::Error;

use crate::expr::ExprError;
use crate::qasm::Diagnostic;
use crate::quipper::TypeError;

pub use dfa::{check_circuit, dfa_step, DfaError, DfaErrorKind, DfaEvent, DfaReport, Interval, WireState};
pub use shadow::{Shadow, ShadowMap};
pub use to_qasm::{quip_to_qasm, quip_to_qasm_legacy, quip_to_qasm_with_map, LifetimeMap};
pub use to_quip::{qasm_to_quip, qasm_to_quip_with_map, SlotMap};

#[derive(Debug, Error, PartialEq)]
pub enum TranslateError {
    #[error("invalid wire lifetime: {0}")]
    Dfa(#[from] DfaError),
    #[error("ill-typed circuit: {0}")]
    Type(#[from] TypeError),
    #[error("invalid program: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("statement {stmt}: {source}")]
    Angle { stmt: usize, source: ExprError },
    #[error("statement {stmt}: {msg}")]
    Statement { stmt: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}
