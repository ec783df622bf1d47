use std::collections::BTreeMap;

use proptest::prelude::*;
use qasmquip_core::expr::angle_literal;
use qasmquip_core::gate::GateKind;
use qasmquip_core::qasm::{parse_qasm, write_qasm};
use qasmquip_core::quipper::{parse_quip, write_quip, QuipCircuit, QuipGate, WireType};
use qasmquip_core::translate::{qasm_to_quip, quip_to_qasm};

fn exp_z(v: f64) -> QuipCircuit {
    let mut c = QuipCircuit::with_inputs(BTreeMap::from([(0, WireType::Qbit)]));
    c.gates.push(QuipGate::unitary(GateKind::ExpZ(v), vec![0]));
    c
}

fn angle() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e3..1e3f64,
        (-64i32..64, 1u32..65).prop_map(|(k, d)| k as f64 * std::f64::consts::PI / d as f64),
    ]
}

proptest! {
    #[test]
    fn literals_evaluate_to_the_same_double(v in angle()) {
        prop_assert_eq!(angle_literal(v).eval().unwrap().to_bits(), (v + 0.0).to_bits());
    }

    #[test]
    fn quipper_angles_print_exactly(v in angle()) {
        let c = exp_z(v);
        prop_assert_eq!(parse_quip(&write_quip(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn angles_survive_both_translations(v in angle()) {
        let c = exp_z(v);
        let text = write_qasm(&quip_to_qasm(&c).unwrap()).unwrap();
        let back = qasm_to_quip(&parse_qasm(&text).unwrap()).unwrap();
        prop_assert_eq!(&back.gates, &c.gates, "{}", text);
    }
}
