mod common;

use common::*;
use tfim_core::circuit::{Circuit, Gate};
use tfim_core::exact::{build_hamiltonian, exact_series, ExactEvolution, Spectrum};
use tfim_core::execute::ideal_execute;
use tfim_core::observables::scaling_fit;
use tfim_core::trotter::{self, build_evolution_circuit, Boundary, TfimParams, TrotterOrder};
use tfim_core::{DenseOperator, StateVector};

const ORDERS: [TrotterOrder; 2] = [TrotterOrder::FirstOrder, TrotterOrder::SymmetricSecondOrder];
const DTS: [f64; 5] = [0.0125, 0.025, 0.05, 0.1, 0.2];

fn step_error(params: &TfimParams, order: TrotterOrder, exact: &ExactEvolution) -> f64 {
    let u = trotter::step(params, order).unwrap().unitary().unwrap();
    u.sub(&exact.propagator(params.dt)).unwrap().operator_norm()
}

fn slopes(n: usize, g: f64, dts: &[f64]) -> (f64, f64) {
    let base = TfimParams::new(n, 1.0, g, 0.1);
    let exact = ExactEvolution::new(&base).unwrap();
    let fit = |order| {
        let errs: Vec<f64> = dts
            .iter()
            .map(|&dt| step_error(&base.with_dt(dt), order, &exact))
            .collect();
        scaling_fit(dts, &errs).unwrap().slope
    };
    (fit(TrotterOrder::FirstOrder), fit(TrotterOrder::SymmetricSecondOrder))
}

#[test]
fn hamiltonian_matches_naive_kronecker_sum() {
    for n in 1..=5 {
        for (j, g) in [(1.0, 1.0), (0.7, -2.3), (0.0, 1.0)] {
            let fast = build_hamiltonian(&TfimParams::new(n, j, g, 0.1)).unwrap();
            let naive = naive_tfim(n, j, g, false);
            assert!(max_abs_diff(fast.matrix(), &naive) < 1e-12, "n={n} j={j} g={g}");
            assert!(fast.hermiticity_defect() < 1e-12);
        }
    }
    for n in 3..=5 {
        let p = TfimParams::new(n, 1.3, 0.4, 0.1).with_boundary(Boundary::Periodic);
        let fast = build_hamiltonian(&p).unwrap();
        assert!(max_abs_diff(fast.matrix(), &naive_tfim(n, 1.3, 0.4, true)) < 1e-12);
    }
}

#[test]
fn ground_energy_agrees_with_naive_construction() {
    let naive = DenseOperator::from_matrix(naive_tfim(5, 1.0, 1.0, false)).unwrap();
    let fast = build_hamiltonian(&TfimParams::new(5, 1.0, 1.0, 0.2)).unwrap();
    let e_naive = Spectrum::of(&naive).unwrap().ground_energy();
    let e_fast = Spectrum::of(&fast).unwrap().ground_energy();
    assert!((e_naive - e_fast).abs() < 1e-10);
}

#[test]
fn eigen_propagator_matches_taylor_expm() {
    let p = TfimParams::new(4, 1.0, 2.0, 0.2);
    let evo = ExactEvolution::new(&p).unwrap();
    let naive = naive_tfim(4, 1.0, 2.0, false);
    for t in [0.0, 0.2, 1.7] {
        let diff = max_abs_diff(evo.propagator(t).matrix(), &taylor_propagator(&naive, t));
        assert!(diff < 1e-10, "t={t}: {diff:e}");
    }
}

#[test]
fn cnot_rz_cnot_is_a_zz_rotation() {
    for theta in [0.4, -1.3, 2.9] {
        let circuit = Circuit::new(2)
            .with_gate(Gate::cnot(0, 1))
            .and_then(|c| c.with_gate(Gate::rz(1, theta)))
            .and_then(|c| c.with_gate(Gate::cnot(0, 1)))
            .unwrap();
        let zz = kron_sites(2, &[(0, pauli_z()), (1, pauli_z())]);
        let expected = expm(&(zz * c(0.0, -theta / 2.0)));
        assert!(max_abs_diff(circuit.unitary().unwrap().matrix(), &expected) < 1e-12);
    }
}

#[test]
fn rotation_gates_match_taylor_exponentials() {
    let theta = 0.77;
    let rx = Circuit::new(3).with_gate(Gate::rx(1, theta)).unwrap().unitary().unwrap();
    let expected = expm(&(kron_sites(3, &[(1, pauli_x())]) * c(0.0, -theta / 2.0)));
    assert!(max_abs_diff(rx.matrix(), &expected) < 1e-12);
    let rz = Circuit::new(3).with_gate(Gate::rz(2, theta)).unwrap().unitary().unwrap();
    let expected = expm(&(kron_sites(3, &[(2, pauli_z())]) * c(0.0, -theta / 2.0)));
    assert!(max_abs_diff(rz.matrix(), &expected) < 1e-12);
}

#[test]
fn steps_approach_the_exact_propagator_for_tiny_dt() {
    // Also pins the rotation-angle signs: a sign slip would leave an O(Δt)
    // error of roughly 2gΔt or 2JΔt.
    for n in [2, 3, 5] {
        let p = TfimParams::new(n, 1.0, 2.0, 1e-3);
        let exact = ExactEvolution::new(&p).unwrap();
        for order in ORDERS {
            let err = step_error(&p, order, &exact);
            assert!(err <= 1e-4, "n={n} {order:?}: {err:e}");
        }
    }
}

#[test]
fn commuting_limit_is_exact() {
    for n in [2, 3, 5] {
        for dt in [0.05, 0.2, 1.3] {
            let p = TfimParams::new(n, 1.0, 0.0, dt);
            let exact = ExactEvolution::new(&p).unwrap();
            for order in ORDERS {
                let u = trotter::step(&p, order).unwrap().unitary().unwrap();
                assert!(u.max_abs_diff(&exact.propagator(dt)).unwrap() < 1e-10);
            }
        }
    }
}

#[test]
fn commuting_limit_states_have_unit_fidelity() {
    let p = TfimParams::new(5, 1.0, 0.0, 0.2);
    let psi = StateVector::all_down(5).unwrap();
    let mut plus_like = psi.clone();
    plus_like.apply_gate(&Gate::rx(2, 1.1)).unwrap();
    let exact = ExactEvolution::new(&p).unwrap();
    for order in ORDERS {
        let circuit = build_evolution_circuit(&p, 12, order).unwrap();
        let mut state = plus_like.clone();
        state.apply_gates(circuit.gates()).unwrap();
        let reference = exact.evolve(&plus_like, 12.0 * 0.2).unwrap();
        assert!((state.fidelity(&reference).unwrap() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn symmetric_step_is_time_reversible() {
    for g in [1.0, 2.0, 6.0] {
        let p = TfimParams::new(5, 1.0, g, 0.2);
        let fwd = trotter::symmetric_step(&p).unwrap().unitary().unwrap();
        let back = trotter::symmetric_step(&p.with_dt(-0.2)).unwrap().unitary().unwrap();
        let prod = fwd.compose(&back).unwrap();
        assert!(prod.max_abs_diff(&DenseOperator::identity(32)).unwrap() < 1e-10);
    }
}

#[test]
fn first_order_step_is_not_time_reversible() {
    let p = TfimParams::new(3, 1.0, 2.0, 0.2);
    let fwd = trotter::first_order_step(&p).unwrap().unitary().unwrap();
    let back = trotter::first_order_step(&p.with_dt(-0.2)).unwrap().unitary().unwrap();
    let prod = fwd.compose(&back).unwrap();
    assert!(prod.max_abs_diff(&DenseOperator::identity(8)).unwrap() > 1e-3);
}

#[test]
fn reordering_within_layers_leaves_unitary_unchanged() {
    let p = TfimParams::new(5, 1.0, 2.0, 0.2);
    for order in ORDERS {
        let original = trotter::step(&p, order).unwrap();
        let gates = original.gates();
        // Reverse the block order inside every maximal run of X rotations and
        // inside every maximal run of ZZ blocks.
        let mut shuffled = Circuit::new(5);
        let mut i = 0;
        while i < gates.len() {
            if matches!(gates[i], Gate::Rx { .. }) {
                let end = i + gates[i..].iter().take_while(|g| matches!(g, Gate::Rx { .. })).count();
                gates[i..end].iter().rev().for_each(|g| shuffled.append_gate(*g).unwrap());
                i = end;
            } else {
                let end = i + gates[i..].iter().take_while(|g| !matches!(g, Gate::Rx { .. })).count();
                for block in gates[i..end].chunks(3).rev() {
                    block.iter().for_each(|g| shuffled.append_gate(*g).unwrap());
                }
                i = end;
            }
        }
        assert_ne!(shuffled.gates(), gates);
        let a = original.unitary().unwrap();
        let b = shuffled.unitary().unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-12, "{order:?}");
    }
}

#[test]
fn step_error_orders_over_the_reference_grid() {
    for n in [2, 3, 5] {
        for g in [1.0, 2.0] {
            let (first, sym) = slopes(n, g, &DTS);
            assert!((first - 2.0).abs() <= 0.1, "n={n} g={g}: first-order slope {first}");
            assert!((sym - 3.0).abs() <= 0.15, "n={n} g={g}: symmetric slope {sym}");
        }
    }
}

#[test]
fn step_error_orders_at_strong_field() {
    // Same gΔt window as g = 2J: the error order is an asymptotic statement in
    // gΔt, and Δt = 0.2/J at g = 6J is already gΔt = 1.2.
    let dts: Vec<f64> = DTS.iter().map(|d| d / 3.0).collect();
    for n in [2, 3, 5] {
        let (first, sym) = slopes(n, 6.0, &dts);
        assert!((first - 2.0).abs() <= 0.1, "n={n}: first-order slope {first}");
        assert!((sym - 3.0).abs() <= 0.15, "n={n}: symmetric slope {sym}");
    }
}

#[test]
#[ignore = "pre-asymptotic: first-order slope is 1.78 at g = 6J over Δt ≤ 0.2/J"]
fn step_error_orders_at_strong_field_on_the_reference_grid() {
    for n in [2, 3, 5] {
        let (first, sym) = slopes(n, 6.0, &DTS);
        assert!((first - 2.0).abs() <= 0.1, "n={n}: first-order slope {first}");
        assert!((sym - 3.0).abs() <= 0.15, "n={n}: symmetric slope {sym}");
    }
}

#[test]
fn exact_evolution_conserves_energy_and_norm() {
    let p = TfimParams::new(5, 1.0, 3.0, 0.2);
    let evo = ExactEvolution::new(&p).unwrap();
    let psi = StateVector::all_down(5).unwrap();
    let e0 = evo.hamiltonian().expectation(&psi).unwrap();
    for k in 0..=40 {
        let state = evo.evolve(&psi, k as f64 * 0.1).unwrap();
        assert!((state.norm() - 1.0).abs() < 1e-10);
        assert!((evo.hamiltonian().expectation(&state).unwrap() - e0).abs() < 1e-10);
    }
}

#[test]
fn exact_series_starts_at_minus_one() {
    let p = TfimParams::new(5, 1.0, 1.0, 0.2);
    let times: Vec<f64> = (0..=20).map(|k| k as f64 * 0.2).collect();
    let s = exact_series(&p, &StateVector::all_down(5).unwrap(), &times).unwrap();
    assert!(s.local[0].iter().all(|m| (m + 1.0).abs() < 1e-12));
    for (k, row) in s.local.iter().enumerate() {
        let mean = row.iter().sum::<f64>() / 5.0;
        assert!((mean - s.total[k]).abs() < 1e-12);
        assert!(row.iter().all(|m| m.abs() <= 1.0 + 1e-9));
    }
}

#[test]
fn trotter_series_tracks_exact_series_at_weak_field() {
    let p = TfimParams::new(5, 1.0, 1.0, 0.2);
    let psi = StateVector::all_down(5).unwrap();
    let times: Vec<f64> = (1..=20).map(|k| k as f64 * 0.2).collect();
    let exact = exact_series(&p, &psi, &times).unwrap();
    for order in ORDERS {
        let sim = ideal_execute(&build_evolution_circuit(&p, 20, order).unwrap(), &psi).unwrap();
        for (s, e) in sim.iter().zip(&exact.local) {
            for (a, b) in s.iter().zip(e) {
                assert!((a - b).abs() < 0.05);
            }
        }
    }
}
