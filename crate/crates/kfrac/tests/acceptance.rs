//! Acceptance gate: each test covers one criterion and prints a single
//! pass/fail line through the harness.

use std::process::Command;
use std::time::Instant;

use num_complex::Complex64 as C64;

use kfrac::coherent::{
    coherence_factor, displacement_apply, eigenstate_bf_check, fractional_supercoherent,
    overcompleteness_check, overlap_exponential_check, vourdas_decomposition_check,
};
use kfrac::fracsusy::{build_all, spectrum, verify_susy, verify_weyl_heisenberg};
use kfrac::grassmann::{verify_realization, GrassmannAlgebra, GrassmannElement};
use kfrac::kfermion::{build_boson, build_fk, verify_fk_relations};
use kfrac::operators::{Basis, Operator};
use kfrac::quon::limit_study;

fn z_default() -> C64 {
    C64::new(0.7, 0.4)
}

#[test]
fn criterion_01_fk_relation_suite() {
    let start = Instant::now();
    for k in 2..=6 {
        let report = verify_fk_relations(k, 1e-10).unwrap();
        assert!(report.overall_pass(), "k={k}:\n{}", report.render_table());
    }
    assert!(start.elapsed().as_secs_f64() < 1.0, "suite exceeded 1 s");
}

#[test]
fn criterion_02_grassmann_realization_suite() {
    for k in 2..=6 {
        let report = verify_realization(k, 1e-10).unwrap();
        assert!(report.overall_pass(), "k={k}:\n{}", report.render_table());
    }
    // Berezin values at k = 2, exact
    let alg = GrassmannAlgebra::pair(2).unwrap();
    let one = GrassmannElement::one(&alg);
    let theta = GrassmannElement::generator(&alg, 0).unwrap();
    let int_one = one.integrate(0).unwrap();
    assert_eq!(int_one.coefficient(&[0, 0]), C64::new(0.0, 0.0));
    let int_theta = theta.integrate(0).unwrap();
    assert_eq!(int_theta.coefficient(&[0, 0]), C64::new(1.0, 0.0));
}

#[test]
fn criterion_03_overlap_exponentials() {
    for k in 2..=5 {
        let report = overlap_exponential_check(k, 1e-12).unwrap();
        assert!(report.overall_pass(), "k={k}:\n{}", report.render_table());
    }
}

#[test]
fn criterion_04_overcompleteness_resolution() {
    for k in 2..=6 {
        let report = overcompleteness_check(k, 1e-10).unwrap();
        assert!(report.overall_pass(), "k={k}:\n{}", report.render_table());
    }
}

#[test]
fn criterion_05_pauli_dichotomy() {
    for k in 2..=5 {
        for m in 1..k {
            let g = coherence_factor(k, m).unwrap();
            assert!((g - 1.0).abs() < 1e-10, "k={k} m={m}: g={g}");
        }
        for m in k..k + 3 {
            let g = coherence_factor(k, m).unwrap();
            assert_eq!(g, 0.0, "k={k} m={m}");
        }
    }
}

#[test]
fn criterion_06_quon_limit() {
    let start = Instant::now();
    for k in 2..=4 {
        let report = limit_study(k, &[1e-2, 1e-3, 1e-4], 6).unwrap();
        assert!(report.monotone, "k={k}:\n{}", report.render_table());
        assert!(report.cauchy, "k={k}");
        let last = report.rows.last().unwrap();
        assert!(
            last.boson_commutator < 1e-2,
            "k={k}: smallest-epsilon deviation {:.3e}",
            last.boson_commutator
        );
    }
    assert!(start.elapsed().as_secs_f64() < 5.0, "suite exceeded 5 s");
}

#[test]
fn criterion_07_weyl_heisenberg_and_susy() {
    for k in 2..=5 {
        let wh = verify_weyl_heisenberg(k, 24, 1e-10).unwrap();
        assert!(wh.overall_pass(), "k={k}:\n{}", wh.render_table());
        let susy = verify_susy(k, 24, 1e-10).unwrap();
        assert!(susy.overall_pass(), "k={k}:\n{}", susy.render_table());
    }
}

#[test]
fn criterion_08_spectra() {
    let s2 = spectrum(2, 24).unwrap();
    let degs: Vec<usize> = s2.levels.iter().take(4).map(|l| l.degeneracy).collect();
    assert_eq!(degs, vec![1, 2, 2, 2]);
    for w in s2.levels.windows(2).take(4) {
        assert!((w[1].energy - w[0].energy - s2.spacing).abs() < 1e-8);
    }

    let s3 = spectrum(3, 24).unwrap();
    let degs: Vec<usize> = s3.levels.iter().take(4).map(|l| l.degeneracy).collect();
    assert_eq!(degs, vec![1, 2, 3, 3]);
    for (level, expect) in s3.levels.iter().zip([-1.0, 1.0, 3.0, 5.0]) {
        assert!((level.energy - expect).abs() < 1e-8);
    }

    // k = 2 matrix identities
    let cutoff = 24;
    let ops = build_all(2, cutoff).unwrap();
    let fk = build_fk(2).unwrap();
    let bos = build_boson(cutoff).unwrap();
    let qm = Operator::tensor(&bos.b_minus, &fk.f_plus).unwrap();
    assert!(ops.q_minus.sub(&qm).unwrap().max_abs() < 1e-13);
    let qp = Operator::tensor(&bos.b_plus, &fk.f_minus).unwrap();
    assert!(ops.q_plus.sub(&qp).unwrap().max_abs() < 1e-13);
    let id_b = Operator::identity(Basis::Boson { cutoff });
    let id_f = Operator::identity(Basis::Fermion { k: 2 });
    let h = Operator::tensor(&bos.b_plus.compose(&bos.b_minus).unwrap(), &id_f)
        .unwrap()
        .add(&Operator::tensor(&id_b, &fk.f_plus.compose(&fk.f_minus).unwrap()).unwrap())
        .unwrap();
    let res = ops.hamiltonian.sub(&h).unwrap().restrict_safe(2).unwrap();
    assert!(res.max_abs() < 1e-13);
}

#[test]
fn criterion_09_supercoherent_states() {
    let z = z_default();
    for k in 2..=4 {
        let state = fractional_supercoherent(z, k, 24).unwrap();
        let displaced = displacement_apply(z, k, 24).unwrap();
        assert!(displaced.sub(&state).unwrap().max_abs() < 1e-12, "k={k}");

        let eig = eigenstate_bf_check(z, k, 24).unwrap();
        assert!(eig.overall_pass(), "k={k}:\n{}", eig.render_table());

        let vourdas = vourdas_decomposition_check(z, k, 24, 1e-12).unwrap();
        assert!(vourdas.overall_pass(), "k={k}:\n{}", vourdas.render_table());
    }

    // k = 2 expansion: |z, theta) = sum_r z^r/sqrt(r!) |r> (x) (|0> + theta |1>)
    let state = fractional_supercoherent(z, 2, 24).unwrap();
    let mut fac = 1.0f64;
    for r in 0..24 {
        if r > 0 {
            fac *= r as f64;
        }
        let boson = z.powu(r as u32) / fac.sqrt();
        assert!((state.coeffs[2 * r].coefficient(&[0, 0]) - boson).norm() < 1e-13, "r={r}");
        assert!((state.coeffs[2 * r + 1].coefficient(&[1, 0]) - boson).norm() < 1e-13, "r={r}");
    }
}

#[test]
fn criterion_10_end_to_end_cli() {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_kfrac"))
        .args(["verify", "--k", "all", "--suite", "all"])
        .output()
        .expect("binary runs");
    assert!(
        output.status.success(),
        "exit {:?}\n{}",
        output.status.code(),
        String::from_utf8_lossy(&output.stdout)
    );
    assert!(start.elapsed().as_secs_f64() < 30.0, "exceeded 30 s");
}
