use std::fmt::Display;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qasmquip_core::decompose::verify_catalog;
use qasmquip_core::harness::{check_laws, Corpus, Law, Writers};
use qasmquip_core::library::env_include_paths;
use qasmquip_core::passes::{self, LscConfig, PassError};
use qasmquip_core::qasm::{parse_qasm_with, write_qasm, ParseOptions, QasmProgram};
use qasmquip_core::quipper::{parse_quip, write_quip, QuipCircuit};
use qasmquip_core::translate::{qasm_to_quip, quip_to_qasm, quip_to_qasm_legacy};

/// Pipeline tools between OpenQASM and Quipper's ASCII format.
///
/// Each tool reads one program from stdin (or --in) and writes one program
/// to stdout (or --out). Diagnostics go to stderr. Exit status is 0 on
/// success, 1 for bad input and 2 when an internal check fails.
#[derive(Parser)]
#[command(name = "qasmquip", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Io {
    /// Read from this file instead of stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Extra directory searched for includes (before LINGUA_INCLUDE_PATH).
    #[arg(long = "include-path", value_name = "DIR")]
    include_path: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eliminate controls not expressible in OpenQASM 2.0 (Quipper; OpenQASM
    /// input is round-tripped through Quipper).
    ElimCtrls(Io),
    /// Inline `inv` modifiers.
    ElimInvs(Io),
    /// Inline `pow` modifiers.
    ElimPows(Io),
    /// Fold built-in function calls in gate parameters.
    ElimFuns(Io),
    /// Translate OpenQASM to Quipper.
    QasmToQuip(Io),
    /// Translate Quipper to OpenQASM 3.
    QuipToQasm {
        #[command(flatten)]
        io: Io,
        /// Lower ancilla calls to plain gates for the OpenQASM 2.0 pipeline.
        #[arg(long)]
        legacy: bool,
    },
    /// Merge all qubits into `q` and all bits into `c`.
    RegMerge(Io),
    /// Restrict a merged OpenQASM 2.0 program to the lattice-surgery subset.
    ToLsc {
        #[command(flatten)]
        io: Io,
        /// Gate set as TOML (`gates`, `measure`, `reset`).
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
    /// Convert OpenQASM 3 to OpenQASM 2.0.
    ToQasm2(Io),
    /// Check the round-trip and semantic laws on generated programs.
    Conformance {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Programs per language.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Comma-separated law families (default: all).
        #[arg(long, value_delimiter = ',')]
        laws: Vec<String>,
    },
    /// Check every decomposition rule against the matrix oracle.
    VerifyCatalog,
}

/// A failure and the exit status it maps to.
struct Failure {
    code: u8,
    msg: String,
}

fn input(msg: impl Display) -> Failure {
    Failure { code: 1, msg: msg.to_string() }
}

fn internal(msg: impl Display) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

fn pass_failure(e: PassError) -> Failure {
    match e {
        PassError::CatalogHole { .. } => internal(e),
        e => input(e),
    }
}

impl Io {
    fn name(&self) -> String {
        self.input.as_ref().map_or("<stdin>".into(), |p| p.display().to_string())
    }

    fn read(&self) -> Result<String, Failure> {
        let mut text = String::new();
        match &self.input {
            Some(p) => text = std::fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))?,
            None => {
                std::io::stdin().read_to_string(&mut text).map_err(|e| input(format!("<stdin>: {e}")))?;
            }
        }
        Ok(text)
    }

    fn write(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| input(format!("<stdout>: {e}")))
            }
        }
    }

    fn qasm(&self) -> Result<QasmProgram, Failure> {
        self.qasm_from(&self.read()?)
    }

    fn qasm_from(&self, text: &str) -> Result<QasmProgram, Failure> {
        let mut include_paths = self.include_path.clone();
        include_paths.extend(env_include_paths());
        let opts = ParseOptions { dialect: None, include_paths };
        parse_qasm_with(text, &opts).map_err(|e| input(format!("{}:{e}", self.name())))
    }

    fn quip(&self) -> Result<QuipCircuit, Failure> {
        self.quip_from(&self.read()?)
    }

    fn quip_from(&self, text: &str) -> Result<QuipCircuit, Failure> {
        parse_quip(text).map_err(|e| input(format!("{}: {e}", self.name())))
    }

    fn emit_qasm(&self, p: &QasmProgram) -> Result<(), Failure> {
        self.write(&write_qasm(p).map_err(internal)?)
    }

    fn emit_quip(&self, c: &QuipCircuit) -> Result<(), Failure> {
        self.write(&write_quip(c).map_err(internal)?)
    }

    fn qasm_pass(&self, f: fn(&QasmProgram) -> Result<QasmProgram, PassError>) -> Result<(), Failure> {
        let out = f(&self.qasm()?).map_err(pass_failure)?;
        self.emit_qasm(&out)
    }
}

fn is_qasm(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with("//"))
        .is_some_and(|l| l.starts_with("OPENQASM"))
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::ElimCtrls(io) => {
            let text = io.read()?;
            if is_qasm(&text) {
                let out = passes::elim_ctrls_qasm(&io.qasm_from(&text)?).map_err(pass_failure)?;
                io.emit_qasm(&out)
            } else {
                let out = passes::elim_ctrls(&io.quip_from(&text)?).map_err(pass_failure)?;
                io.emit_quip(&out)
            }
        }
        Cmd::ElimInvs(io) => io.qasm_pass(passes::elim_invs),
        Cmd::ElimPows(io) => io.qasm_pass(passes::elim_pows),
        Cmd::ElimFuns(io) => io.qasm_pass(passes::elim_funs),
        Cmd::ToQasm2(io) => io.qasm_pass(passes::to_qasm2),
        Cmd::QasmToQuip(io) => {
            let c = qasm_to_quip(&io.qasm()?).map_err(input)?;
            io.emit_quip(&c)
        }
        Cmd::QuipToQasm { io, legacy } => {
            let c = io.quip()?;
            let p = if legacy { quip_to_qasm_legacy(&c).map(|r| r.0) } else { quip_to_qasm(&c) };
            io.emit_qasm(&p.map_err(input)?)
        }
        Cmd::RegMerge(io) => {
            let (p, map) = passes::reg_merge_with_map(&io.qasm()?).map_err(pass_failure)?;
            let mut text = write_qasm(&p).map_err(internal)?;
            // The mapping goes after the program so the header stays first.
            for (from, to) in &map {
                text.push_str(&format!("// {from} -> {to}\n"));
            }
            io.write(&text)
        }
        Cmd::ToLsc { io, config } => {
            let cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| input(format!("{}: {e}", path.display())))?;
                    LscConfig::from_toml(&text).map_err(|e| input(format!("{}: {e}", path.display())))?
                }
                None => LscConfig::default(),
            };
            let out = passes::to_lsc_with(&io.qasm()?, &cfg).map_err(pass_failure)?;
            io.emit_qasm(&out)
        }
        Cmd::Conformance { seed, samples, laws } => {
            let known: Vec<&str> = Law::ALL.iter().map(|l| l.family()).collect();
            if let Some(bad) = laws.iter().find(|l| !known.contains(&l.as_str())) {
                return Err(input(format!("unknown law `{bad}` (expected one of: {})", dedup(&known).join(", "))));
            }
            let chosen: Vec<Law> =
                Law::ALL.into_iter().filter(|l| laws.is_empty() || laws.iter().any(|n| n == l.family())).collect();
            let report = check_laws(&Corpus::generate(seed, samples), &chosen, &Writers::default());
            print!("{report}");
            if report.all_pass() {
                Ok(())
            } else {
                Err(internal("some laws failed"))
            }
        }
        Cmd::VerifyCatalog => {
            let report = verify_catalog();
            print!("{report}");
            if report.all_pass() {
                Ok(())
            } else {
                Err(internal(format!("{} rules failed", report.failures().count())))
            }
        }
    }
}

fn dedup<'a>(names: &[&'a str]) -> Vec<&'a str> {
    let mut out: Vec<&str> = vec![];
    for n in names {
        if !out.contains(n) {
            out.push(n);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qasmquip: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
