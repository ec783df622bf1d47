use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{catalog, DecompRule, Family};
use crate::gate::{GateKind, GateTag};
use crate::matrix::{ancilla_deviation, phase_deviation, TOL_EXACT, TOL_PHASE};
use crate::semantics::{circuit_matrix, Op, MAX_MATRIX_WIRES};

const TRIALS: usize = 6;
const SEED: u64 = 0x5eed_ca7a;

#[derive(Clone, Debug, PartialEq)]
pub struct RuleReport {
    pub id: String,
    pub family: Family,
    pub source: &'static str,
    pub max_dev: f64,
    pub phase_exact: bool,
    pub no_new_controls: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CatalogReport {
    pub rows: Vec<RuleReport>,
}

impl CatalogReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RuleReport> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "{:<4} {:<28} {:<6} {:>10.3e}  {}",
                if r.pass { "ok" } else { "FAIL" },
                r.id,
                if r.phase_exact { "exact" } else { "phase" },
                r.max_dev,
                r.source
            )?;
        }
        let bad = self.failures().count();
        write!(f, "{} rules, {} failed", self.rows.len(), bad)
    }
}

fn draw(rng: &mut ChaCha8Rng, tag: GateTag, trial: usize) -> Vec<f64> {
    (0..tag.param_count())
        .map(|_| {
            if tag == GateTag::RGate {
                if trial < TRIALS / 2 {
                    rng.gen_range(0..7) as f64
                } else {
                    rng.gen_range(0.0..6.0)
                }
            } else {
                rng.gen_range(-2.0 * std::f64::consts::PI..2.0 * std::f64::consts::PI)
            }
        })
        .collect()
}

/// Deviation of one rule instance with `k` extra controls on wires `0..k`.
fn deviation(rule: &DecompRule, params: &[f64], k: usize) -> f64 {
    let main = k + rule.main_wires();
    let total = main + rule.ancillas;
    let extra: Vec<(usize, bool)> = (0..k).map(|w| (w, true)).collect();
    let lhs_kind = GateKind::from_tag(rule.lhs, params.to_vec()).expect("parameter count");
    let first_target = k + rule.ctrls;
    let mut lhs = Op::new(lhs_kind, (first_target..first_target + rule.lhs.arity()).collect()).inv(rule.inverted);
    lhs.controls = extra.clone();
    lhs.controls.extend((k..k + rule.ctrls).map(|w| (w, true)));
    let target = match circuit_matrix(main, &[lhs]) {
        Ok(m) => m,
        Err(_) => return f64::INFINITY,
    };
    let wires: Vec<usize> = (k..total).collect();
    let ops: Vec<Op> = rule
        .instantiate(params, &wires, &extra)
        .into_iter()
        .map(|i| Op { gate: i.gate, inverted: i.inverted, targets: i.targets, controls: i.controls })
        .collect();
    let full = match circuit_matrix(total, &ops) {
        Ok(m) => m,
        Err(_) => return f64::INFINITY,
    };
    if rule.ancillas == 0 {
        if rule.phase_exact {
            full.max_diff(&target)
        } else {
            phase_deviation(&full, &target).unwrap_or(f64::INFINITY)
        }
    } else {
        let zeros = vec![false; rule.ancillas];
        ancilla_deviation(&full, &target, &zeros, &zeros, rule.phase_exact).unwrap_or(f64::INFINITY)
    }
}

/// Checks one rule on random parameters; rules with inheriting gates are
/// also checked under one and two extra controls.
pub fn verify_rule(rule: &DecompRule, seed: u64) -> RuleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = if rule.lhs.param_count() == 0 { 1 } else { TRIALS };
    let mut max_dev: f64 = 0.0;
    for trial in 0..trials {
        let params = draw(&mut rng, rule.lhs, trial);
        let extras = if rule.controllable() { 2 } else { 0 };
        for k in 0..=extras {
            if k + rule.wires() > MAX_MATRIX_WIRES {
                break;
            }
            max_dev = max_dev.max(deviation(rule, &params, k));
        }
    }
    let tol = if rule.phase_exact { TOL_EXACT } else { TOL_PHASE };
    let no_new_controls = rule.adds_no_controls();
    RuleReport {
        id: rule.id.clone(),
        family: rule.family,
        source: rule.source,
        max_dev,
        phase_exact: rule.phase_exact,
        no_new_controls,
        pass: max_dev <= tol && no_new_controls,
    }
}

pub fn verify_catalog() -> CatalogReport {
    CatalogReport { rows: catalog().iter().enumerate().map(|(i, r)| verify_rule(r, SEED ^ i as u64)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::negative_cases;

    #[test]
    fn every_rule_holds() {
        let rep = verify_catalog();
        assert!(rep.all_pass(), "{rep}");
    }

    #[test]
    fn printed_variants_fail() {
        for r in negative_cases() {
            let rep = verify_rule(&r, 7);
            assert!(!rep.pass, "{} unexpectedly holds", r.id);
        }
    }
}
