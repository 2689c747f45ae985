//! The extended Weyl-Heisenberg algebra and the Z_k-graded supersymmetric
//! oscillator: ladder operators X_pm, the Klein operator, grade projectors,
//! supercharges, the Hamiltonian, relation suites, and the spectrum.

use num_complex::Complex64 as C64;

use crate::error::KfracError;
use crate::kfermion::{build_boson, build_fk};
use crate::operators::{Basis, BasisLabel, Operator};
use crate::qnum::{qfactorial, Deformation};
use crate::report::{CheckReport, Level, SpectrumReport};

/// All operators of the graded oscillator on the truncated tensor basis.
#[derive(Clone, Debug)]
pub struct FracSusyOperators {
    pub deformation: Deformation,
    pub boson_cutoff: usize,
    /// The cyclic fermionic factor `F = f_- + (f_+)^{k-1}/[k-1]_q!` on the
    /// fermion basis; its k-th power telescopes to the identity.
    pub cycle: Operator,
    pub x_minus: Operator,
    pub x_plus: Operator,
    pub klein: Operator,
    pub number: Operator,
    pub projectors: Vec<Operator>,
    pub q_minus: Operator,
    pub q_plus: Operator,
    pub hamiltonian: Operator,
}

/// Build every operator of the graded oscillator:
/// `X_- = b_- (x) F`, `X_+ = b_+ (x) F^{k-1}`, the Klein operator
/// `K = f_-f_+ - f_+f_-`, the projectors `Pi_i = (1/k) sum_s q^{si} K^s`,
/// the supercharges `Q_- = X_-(1 - Pi_{k-1})`, `Q_+ = X_+(1 - Pi_0)`, and the
/// Hamiltonian of the defining (Rubakov-Spiridonov) relation.
pub fn build_all(k: usize, boson_cutoff: usize) -> Result<FracSusyOperators, KfracError> {
    let fk = build_fk(k)?;
    if boson_cutoff < k + 3 {
        return Err(KfracError::InvalidCutoff { cutoff: boson_cutoff, min: k + 3 });
    }
    let bos = build_boson(boson_cutoff)?;
    let d = fk.deformation;

    let cycle = fk
        .f_minus
        .add(&fk.f_plus.power(k - 1).scale(1.0 / qfactorial(k - 1, d.q)?))?;

    let x_minus = Operator::tensor(&bos.b_minus, &cycle)?;
    let x_plus = Operator::tensor(&bos.b_plus, &cycle.power(k - 1))?;

    let klein_f = fk.f_minus.commutator(&fk.f_plus)?;
    let id_b = Operator::identity(Basis::Boson { cutoff: boson_cutoff });
    let klein = Operator::tensor(&id_b, &klein_f)?;

    let tensor_basis = klein.basis();
    let one = Operator::identity(tensor_basis);

    let mut projectors = Vec::with_capacity(k);
    for i in 0..k {
        let mut acc = Operator::zeros(tensor_basis);
        for s in 0..k {
            let phase = d.q.powu((s * i) as u32);
            acc = acc.add(&klein.power(s).scale(phase))?;
        }
        projectors.push(acc.scale(C64::new(1.0 / k as f64, 0.0)));
    }

    let q_minus = x_minus.compose(&one.sub(&projectors[k - 1])?)?;
    let q_plus = x_plus.compose(&one.sub(&projectors[0])?)?;

    let m_op = x_plus.compose(&x_minus)?;
    let xm_xp = x_minus.compose(&x_plus)?;

    // H = X-X+ Pi_1
    //   + sum_{l=2}^{k-1} (X+X- - l + 1)(Pi_0 + ... + Pi_{k-l-1})
    //   + sum_{l=2}^{k-1} l (X-X+ + (l-1)/2) Pi_l
    //   + X+X- (1 - Pi_{k-1})
    let mut hamiltonian = xm_xp.compose(&projectors[1])?;
    for l in 2..k {
        let shifted = m_op.sub(&one.scale(C64::new(l as f64 - 1.0, 0.0)))?;
        let mut proj_sum = Operator::zeros(tensor_basis);
        for i in 0..=(k - l - 1) {
            proj_sum = proj_sum.add(&projectors[i])?;
        }
        hamiltonian = hamiltonian.add(&shifted.compose(&proj_sum)?)?;

        let raised = xm_xp.add(&one.scale(C64::new((l as f64 - 1.0) / 2.0, 0.0)))?;
        hamiltonian = hamiltonian.add(&raised.scale(C64::new(l as f64, 0.0)).compose(&projectors[l])?)?;
    }
    hamiltonian = hamiltonian.add(&m_op.compose(&one.sub(&projectors[k - 1])?)?)?;

    Ok(FracSusyOperators {
        deformation: d,
        boson_cutoff,
        cycle,
        x_minus,
        x_plus,
        klein,
        number: m_op,
        projectors,
        q_minus,
        q_plus,
        hamiltonian,
    })
}

fn safe_residual(op: &Operator, margin: usize) -> Result<f64, KfracError> {
    Ok(op.restrict_safe(margin)?.max_abs())
}

/// Residuals of the extended Weyl-Heisenberg relations on the safe subspace
/// (margin `k + 1`).
pub fn verify_weyl_heisenberg(
    k: usize,
    boson_cutoff: usize,
    tol: f64,
) -> Result<CheckReport, KfracError> {
    let ops = build_all(k, boson_cutoff)?;
    let d = ops.deformation;
    let margin = k + 1;
    let one = Operator::identity(ops.klein.basis());
    let mut report = CheckReport::new(format!("weyl-heisenberg k={k}"));

    report.residual(
        "F^k = 1",
        ops.cycle.power(k).sub(&Operator::identity(Basis::Fermion { k }))?.max_abs(),
        tol,
    );
    report.residual(
        "[X-,X+] = 1",
        safe_residual(&ops.x_minus.commutator(&ops.x_plus)?.sub(&one)?, margin)?,
        tol,
    );
    report.residual(
        "K X+ - q X+ K = 0",
        safe_residual(&ops.klein.q_commutator(&ops.x_plus, d.q)?, margin)?,
        tol,
    );
    report.residual(
        "K X- - qbar X- K = 0",
        safe_residual(&ops.klein.q_commutator(&ops.x_minus, d.qbar)?, margin)?,
        tol,
    );
    report.residual("K^k = 1", ops.klein.power(k).sub(&one)?.max_abs(), tol);
    report.residual(
        "[M,X-] = -X-",
        safe_residual(
            &ops.number.commutator(&ops.x_minus)?.add(&ops.x_minus)?,
            margin,
        )?,
        tol,
    );
    report.residual(
        "[M,X+] = +X+",
        safe_residual(
            &ops.number.commutator(&ops.x_plus)?.sub(&ops.x_plus)?,
            margin,
        )?,
        tol,
    );
    report.residual(
        "[M,K] = 0",
        safe_residual(&ops.number.commutator(&ops.klein)?, margin)?,
        tol,
    );

    // projector algebra
    let mut proj_sum = Operator::zeros(ops.klein.basis());
    let mut orth = 0.0f64;
    for (i, pi) in ops.projectors.iter().enumerate() {
        proj_sum = proj_sum.add(pi)?;
        for (j, pj) in ops.projectors.iter().enumerate() {
            let prod = pi.compose(pj)?;
            let expect = if i == j { pi.clone() } else { Operator::zeros(ops.klein.basis()) };
            orth = orth.max(prod.sub(&expect)?.max_abs());
        }
    }
    report.residual("sum_i Pi_i = 1", proj_sum.sub(&one)?.max_abs(), tol);
    report.residual("Pi_i Pi_j = delta_ij Pi_i", orth, tol);

    Ok(report)
}

/// Residuals of the supercharge relations: nilpotency of order k, the
/// defining relation for H, and conservation `[H, Q_pm] = 0`.
pub fn verify_susy(k: usize, boson_cutoff: usize, tol: f64) -> Result<CheckReport, KfracError> {
    let ops = build_all(k, boson_cutoff)?;
    let margin = k + 1;
    let mut report = CheckReport::new(format!("susy k={k}"));

    report.residual("(Q-)^k = 0", safe_residual(&ops.q_minus.power(k), margin)?, tol);
    report.residual("(Q+)^k = 0", safe_residual(&ops.q_plus.power(k), margin)?, tol);
    report.nonzero(
        "(Q-)^{k-1} != 0",
        ops.q_minus.power(k - 1).restrict_safe(margin)?.max_abs(),
        0.1,
    );
    report.nonzero(
        "(Q+)^{k-1} != 0",
        ops.q_plus.power(k - 1).restrict_safe(margin)?.max_abs(),
        0.1,
    );

    // sum_{j=0}^{k-1} (Q-)^{k-1-j} Q+ (Q-)^j = (Q-)^{k-2} H
    let mut lhs = Operator::zeros(ops.klein.basis());
    for j in 0..k {
        lhs = lhs.add(
            &ops.q_minus
                .power(k - 1 - j)
                .compose(&ops.q_plus)?
                .compose(&ops.q_minus.power(j))?,
        )?;
    }
    let rhs = ops.q_minus.power(k - 2).compose(&ops.hamiltonian)?;
    report.residual(
        "sum_j (Q-)^{k-1-j} Q+ (Q-)^j = (Q-)^{k-2} H",
        safe_residual(&lhs.sub(&rhs)?, margin)?,
        tol,
    );

    report.residual(
        "[H,Q-] = 0",
        safe_residual(&ops.hamiltonian.commutator(&ops.q_minus)?, margin)?,
        tol,
    );
    report.residual(
        "[H,Q+] = 0",
        safe_residual(&ops.hamiltonian.commutator(&ops.q_plus)?, margin)?,
        tol,
    );

    Ok(report)
}

/// Read the spectrum of the Hamiltonian.
///
/// H is diagonal in the number basis (a consequence of `F^k = 1`), so the
/// spectrum is the diagonal with truncation-contaminated labels
/// (`r >= cutoff - k`) discarded, grouped into levels.
pub fn spectrum(k: usize, boson_cutoff: usize) -> Result<SpectrumReport, KfracError> {
    let ops = build_all(k, boson_cutoff)?;
    let h = &ops.hamiltonian;
    let tol = 1e-10;
    if !h.is_diagonal(tol) {
        return Err(KfracError::NotDiagonal { residual: h.off_diagonal_max(), tol });
    }

    let basis = h.basis();
    let mut energies = Vec::new();
    let mut discarded = 0usize;
    for (idx, z) in h.diagonal().into_iter().enumerate() {
        let r = match basis.label(idx) {
            BasisLabel::Pair { r, .. } => r,
            _ => unreachable!("hamiltonian lives on the tensor basis"),
        };
        if r >= boson_cutoff - k {
            discarded += 1;
        } else {
            energies.push(z.re);
        }
    }
    energies.sort_by(|a, b| a.partial_cmp(b).unwrap());

    const GROUP_TOL: f64 = 1e-8;
    let mut levels: Vec<Level> = Vec::new();
    for e in energies {
        match levels.last_mut() {
            Some(level) if (e - level.energy).abs() < GROUP_TOL => level.degeneracy += 1,
            _ => levels.push(Level { energy: e, degeneracy: 1 }),
        }
    }

    let spacing = if levels.len() >= 2 { levels[1].energy - levels[0].energy } else { 0.0 };
    Ok(SpectrumReport { k, boson_cutoff, levels, spacing, discarded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::Operator;

    #[test]
    fn cycle_power_is_identity() {
        for k in 2..=6 {
            let ops = build_all(k, k + 4).unwrap();
            let res = ops
                .cycle
                .power(k)
                .sub(&Operator::identity(Basis::Fermion { k }))
                .unwrap();
            assert!(res.max_abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn klein_is_diagonal_with_root_entries() {
        let ops = build_all(3, 8).unwrap();
        assert!(ops.klein.is_diagonal(1e-13));
        for (idx, z) in ops.klein.diagonal().into_iter().enumerate() {
            let n = idx % 3;
            assert!((z - ops.deformation.q.powu(n as u32)).norm() < 1e-13);
        }
    }

    #[test]
    fn projectors_select_grades() {
        // The label-arithmetic oracle: Pi_i keeps fermion number
        // n = -i (mod k).
        for k in 2..=5 {
            let ops = build_all(k, k + 4).unwrap();
            for (i, pi) in ops.projectors.iter().enumerate() {
                assert!(pi.is_diagonal(1e-12));
                for (idx, z) in pi.diagonal().into_iter().enumerate() {
                    let n = idx % k;
                    let expect = if (n + i) % k == 0 { 1.0 } else { 0.0 };
                    assert!((z - expect).norm() < 1e-12, "k={k} i={i} n={n}");
                }
            }
        }
    }

    #[test]
    fn k2_specializations() {
        // Q- = X- Pi_0, Q+ = X+ Pi_1; in boson/fermion terms Q- = f+ b-,
        // Q+ = f- b+, and H = b+b- + f+f-.
        let cutoff = 10;
        let ops = build_all(2, cutoff).unwrap();
        let fk = build_fk(2).unwrap();
        let bos = build_boson(cutoff).unwrap();

        let qm_expect = ops.x_minus.compose(&ops.projectors[0]).unwrap();
        assert!(ops.q_minus.sub(&qm_expect).unwrap().max_abs() < 1e-13);
        let qp_expect = ops.x_plus.compose(&ops.projectors[1]).unwrap();
        assert!(ops.q_plus.sub(&qp_expect).unwrap().max_abs() < 1e-13);

        let qm = Operator::tensor(&bos.b_minus, &fk.f_plus).unwrap();
        assert!(ops.q_minus.sub(&qm).unwrap().max_abs() < 1e-12);
        let qp = Operator::tensor(&bos.b_plus, &fk.f_minus).unwrap();
        assert!(ops.q_plus.sub(&qp).unwrap().max_abs() < 1e-12);

        let id_b = Operator::identity(Basis::Boson { cutoff });
        let id_f = Operator::identity(Basis::Fermion { k: 2 });
        let h = Operator::tensor(&bos.b_plus.compose(&bos.b_minus).unwrap(), &id_f)
            .unwrap()
            .add(&Operator::tensor(&id_b, &fk.f_plus.compose(&fk.f_minus).unwrap()).unwrap())
            .unwrap();
        assert!(ops.hamiltonian.sub(&h).unwrap().restrict_safe(3).unwrap().max_abs() < 1e-12);

        // H = Q-Q+ + Q+Q- away from the truncation edge
        let anti = ops
            .q_minus
            .compose(&ops.q_plus)
            .unwrap()
            .add(&ops.q_plus.compose(&ops.q_minus).unwrap())
            .unwrap();
        let res = ops.hamiltonian.sub(&anti).unwrap().restrict_safe(3).unwrap();
        assert!(res.max_abs() < 1e-12);
    }

    #[test]
    fn k3_hamiltonian_matches_displayed_form() {
        // H = (2 X+X- - 1) Pi_0 + (2 X+X- + 1) Pi_1 + (2 X+X- + 3) Pi_2
        let ops = build_all(3, 10).unwrap();
        let one = Operator::identity(ops.klein.basis());
        let two_m = ops.number.scale(C64::new(2.0, 0.0));
        let mut h = Operator::zeros(ops.klein.basis());
        for (i, shift) in [(-1.0), 1.0, 3.0].into_iter().enumerate() {
            h = h
                .add(
                    &two_m
                        .add(&one.scale(C64::new(shift, 0.0)))
                        .unwrap()
                        .compose(&ops.projectors[i])
                        .unwrap(),
                )
                .unwrap();
        }
        assert!(ops.hamiltonian.sub(&h).unwrap().restrict_safe(4).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn k3_defining_relation_displayed_form() {
        // (Q-)^2 Q+ + Q- Q+ Q- + Q+ (Q-)^2 = Q- H
        let ops = build_all(3, 12).unwrap();
        let qm = &ops.q_minus;
        let qp = &ops.q_plus;
        let lhs = qm
            .power(2)
            .compose(qp)
            .unwrap()
            .add(&qm.compose(qp).unwrap().compose(qm).unwrap())
            .unwrap()
            .add(&qp.compose(&qm.power(2)).unwrap())
            .unwrap();
        let rhs = qm.compose(&ops.hamiltonian).unwrap();
        assert!(lhs.sub(&rhs).unwrap().restrict_safe(4).unwrap().max_abs() < 1e-11);
    }

    #[test]
    fn relation_suites_pass() {
        for k in 2..=6 {
            let wh = verify_weyl_heisenberg(k, 24, 1e-10).unwrap();
            assert!(wh.overall_pass(), "k={k}:\n{}", wh.render_table());
            let susy = verify_susy(k, 24, 1e-10).unwrap();
            assert!(susy.overall_pass(), "k={k}:\n{}", susy.render_table());
        }
    }

    /// Independent per-label evaluation of the Hamiltonian using the
    /// label-arithmetic projectors: grade i = (k - n) mod k, X+X- -> r,
    /// X-X+ -> r + 1.
    fn energy_oracle(k: usize, r: usize, n: usize) -> f64 {
        let i = (k - n % k) % k;
        let r = r as f64;
        let mut e = 0.0;
        if i == 1 {
            e += r + 1.0;
        }
        for l in 2..k {
            if i <= k - l - 1 {
                e += r - l as f64 + 1.0;
            }
            if i == l {
                e += l as f64 * (r + 1.0 + (l as f64 - 1.0) / 2.0);
            }
        }
        if i != k - 1 {
            e += r;
        }
        e
    }

    #[test]
    fn spectrum_matches_oracle() {
        for k in 2..=6 {
            let cutoff = 24;
            let ops = build_all(k, cutoff).unwrap();
            assert!(ops.hamiltonian.is_diagonal(1e-10), "k={k}");
            let diag = ops.hamiltonian.diagonal();
            for r in 0..cutoff - k {
                for n in 0..k {
                    let expect = energy_oracle(k, r, n);
                    let got = diag[r * k + n];
                    assert!((got - expect).norm() < 1e-10, "k={k} r={r} n={n}: {got} vs {expect}");
                }
            }
        }
    }

    #[test]
    fn spectrum_degeneracies() {
        let s2 = spectrum(2, 24).unwrap();
        let degs: Vec<usize> = s2.levels.iter().take(4).map(|l| l.degeneracy).collect();
        assert_eq!(degs, vec![1, 2, 2, 2]);
        assert!((s2.spacing - 1.0).abs() < 1e-10);

        let s3 = spectrum(3, 24).unwrap();
        let degs: Vec<usize> = s3.levels.iter().take(4).map(|l| l.degeneracy).collect();
        assert_eq!(degs, vec![1, 2, 3, 3]);
        let energies: Vec<f64> = s3.levels.iter().take(4).map(|l| l.energy).collect();
        for (got, expect) in energies.iter().zip([-1.0, 1.0, 3.0, 5.0]) {
            assert!((got - expect).abs() < 1e-8);
        }

        // general pattern (1, 2, ..., k-1, k, k, ...)
        for k in 2..=6 {
            let s = spectrum(k, 24).unwrap();
            for (idx, level) in s.levels.iter().take(k + 2).enumerate() {
                let expect = (idx + 1).min(k);
                assert_eq!(level.degeneracy, expect, "k={k} level={idx}");
            }
            // uniform spacing between adjacent distinct levels
            for w in s.levels.windows(2).take(k + 2) {
                assert!((w[1].energy - w[0].energy - s.spacing).abs() < 1e-8, "k={k}");
            }
        }
    }

    #[test]
    fn coherent_state_closure_under_h_for_k2() {
        // H keeps the k = 2 supercoherent state inside the
        // (scalar, theta)-component structure: label (r, 0) coefficients stay
        // degree 0 and label (r, 1) coefficients stay degree 1 in theta.
        use crate::coherent::fractional_supercoherent;
        let ops = build_all(2, 24).unwrap();
        let state = fractional_supercoherent(C64::new(0.7, 0.4), 2, 24).unwrap();
        let moved = state.apply(&ops.hamiltonian).unwrap();
        for (idx, c) in moved.coeffs.iter().enumerate() {
            let n = idx % 2;
            for (exps, coeff) in c.terms() {
                if coeff.norm() > 1e-14 {
                    assert_eq!(exps[0] as usize, n, "label {idx}");
                    assert_eq!(exps[1], 0);
                }
            }
        }
    }

    #[test]
    fn cutoff_precondition() {
        assert!(build_all(4, 6).is_err());
        assert!(build_all(1, 10).is_err());
    }
}
