//! Program-to-program passes of the pipeline.
//!
//! Control elimination works on Quipper circuits; every other pass rewrites
//! OpenQASM programs. Each pass is a pure function and idempotent.

mod elim_ctrls;
mod elim_invs;
mod reg_merge;
mod to_lsc;
mod to_qasm2;

use thiserror::Error;

use crate::expr::ExprError;
use crate::qasm::{names, QasmProgram, Statement, Version};
use crate::translate::{qasm_to_quip, quip_to_qasm, TranslateError};

pub use elim_ctrls::{elim_ctrls, is_ctrl_free, max_census};
pub use elim_invs::{elim_funs, elim_invs, elim_pows};
pub use reg_merge::{reg_merge, reg_merge_with_map, RegMap};
pub use to_lsc::{to_lsc, to_lsc_with, LscConfig};
pub use to_qasm2::to_qasm2;

#[derive(Debug, Error, PartialEq)]
pub enum PassError {
    #[error("no rule removes the controls of {gate} with {ctrls} controls")]
    CatalogHole { gate: String, ctrls: usize },
    #[error("statement {stmt}: no inverse rule for {gate}")]
    NoInverse { stmt: usize, gate: String },
    #[error("statement {stmt}: {source}")]
    Angle { stmt: usize, source: ExprError },
    #[error("statement {stmt}: {what} must be eliminated first")]
    Residual { stmt: usize, what: String },
    #[error("statement {stmt}: {gate} cannot be expressed in the target gate set")]
    Unreducible { stmt: usize, gate: String },
    #[error("registers must be merged first ({0})")]
    NotMerged(String),
    #[error("expected an OpenQASM {0} program")]
    Version(&'static str),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Translate(#[from] TranslateError),
}

/// Control elimination for an OpenQASM program, through its Quipper form.
pub fn elim_ctrls_qasm(p: &QasmProgram) -> Result<QasmProgram, PassError> {
    let c = qasm_to_quip(p)?;
    Ok(quip_to_qasm(&elim_ctrls(&c)?)?)
}

/// Adds whatever includes a generated OpenQASM 3 program needs to spell its
/// gates, keeping the existing ones.
fn add_needed_includes(p: &mut QasmProgram) {
    if p.version != Version::V3 {
        return;
    }
    let mut needed = vec![];
    for s in &p.stmts {
        if let Statement::Gate { gate, .. } = s {
            if names::spell(p.version, &p.includes, gate.tag(), 0).is_none() {
                if let Some(inc) = names::include_for(Version::V3, gate.tag(), 0).filter(|i| !i.is_empty()) {
                    needed.push(inc);
                }
            }
        }
    }
    for inc in needed {
        p.add_include(inc);
    }
}

fn gate_name(s: &Statement) -> String {
    match s {
        Statement::Gate { gate, .. } => format!("{:?}", gate.tag()),
        Statement::Measure { .. } => "measure".into(),
        Statement::Reset(_) => "reset".into(),
        Statement::Call { func, .. } => func.name().into(),
    }
}
