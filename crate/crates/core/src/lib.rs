//! Translation between OpenQASM and Quipper's ASCII circuit format.
//!
//! Both languages are parsed into small IRs (`qasm`, `quipper`) that share
//! one gate enumeration (`gate`). The `translate` module maps between them,
//! `passes` holds the single-purpose rewriting tools, and `decompose` the
//! rule catalog they draw on. `semantics` and `matrix` give circuits a
//! unitary meaning so every rewrite can be checked numerically.

pub mod decompose;
pub mod expr;
pub mod gate;
pub mod harness;
pub mod library;
pub mod matrix;
pub mod passes;
pub mod qasm;
pub mod quipper;
pub mod semantics;
pub mod translate;
