//! The k-dimensional representation of the k-fermionic algebra and the
//! truncated boson ladder operators.

use num_complex::Complex64 as C64;

use crate::error::KfracError;
use crate::operators::{Basis, Operator};
use crate::qnum::{principal_sqrt, qnumber, Deformation};
use crate::report::CheckReport;

/// The five generators of the k-fermionic algebra in their k-dimensional
/// number-basis representation, at shift `s = 1/2`.
#[derive(Clone, Debug)]
pub struct FkOperators {
    pub deformation: Deformation,
    pub f_minus: Operator,
    pub f_plus: Operator,
    pub f_plus_plus: Operator,
    pub f_minus_plus: Operator,
    pub number: Operator,
}

/// Truncated harmonic-oscillator ladder operators on an R-dimensional space.
#[derive(Clone, Debug)]
pub struct BosonOperators {
    pub cutoff: usize,
    pub b_minus: Operator,
    pub b_plus: Operator,
    pub number: Operator,
}

/// Build the k-fermion matrices.
///
/// With `s = 1/2` the actions reduce to
/// `f_-|n> = ([n]_q)^{1/2} |n-1>`, `f_+|n> = ([n+1]_q)^{1/2} |n+1>`, and the
/// conjugate pair uses `qbar` in place of `q`. Square roots are principal.
pub fn build_fk(k: usize) -> Result<FkOperators, KfracError> {
    let deformation = Deformation::new(k)?;
    let basis = Basis::Fermion { k };
    let q = deformation.q;
    let qbar = deformation.qbar;

    let lower = |p: C64| -> Result<Operator, KfracError> {
        let mut m = Operator::zeros(basis);
        for n in 1..k {
            m[(n - 1, n)] = principal_sqrt(qnumber(n as f64, p)?);
        }
        Ok(m)
    };
    let raise = |p: C64| -> Result<Operator, KfracError> {
        let mut m = Operator::zeros(basis);
        for n in 0..k - 1 {
            m[(n + 1, n)] = principal_sqrt(qnumber(n as f64 + 1.0, p)?);
        }
        Ok(m)
    };

    let mut number = Operator::zeros(basis);
    for n in 0..k {
        number[(n, n)] = C64::new(n as f64, 0.0);
    }

    Ok(FkOperators {
        deformation,
        f_minus: lower(q)?,
        f_plus: raise(q)?,
        f_plus_plus: lower(qbar)?,
        f_minus_plus: raise(qbar)?,
        number,
    })
}

/// Build the truncated boson ladder: `b_-|r> = sqrt(r)|r-1>`,
/// `b_+|r> = sqrt(r+1)|r+1>` with `b_+|R-1> = 0`.
pub fn build_boson(cutoff: usize) -> Result<BosonOperators, KfracError> {
    if cutoff < 2 {
        return Err(KfracError::InvalidCutoff { cutoff, min: 2 });
    }
    let basis = Basis::Boson { cutoff };
    let mut b_minus = Operator::zeros(basis);
    let mut b_plus = Operator::zeros(basis);
    let mut number = Operator::zeros(basis);
    for r in 0..cutoff {
        if r > 0 {
            b_minus[(r - 1, r)] = C64::new((r as f64).sqrt(), 0.0);
        }
        if r + 1 < cutoff {
            b_plus[(r + 1, r)] = C64::new((r as f64 + 1.0).sqrt(), 0.0);
        }
        number[(r, r)] = C64::new(r as f64, 0.0);
    }
    Ok(BosonOperators { cutoff, b_minus, b_plus, number })
}

/// Verify every defining relation of the k-fermionic algebra at order `k`.
pub fn verify_fk_relations(k: usize, tol: f64) -> Result<CheckReport, KfracError> {
    let ops = build_fk(k)?;
    let d = ops.deformation;
    let one = Operator::identity(Basis::Fermion { k });
    let mut report = CheckReport::new(format!("fk-relations k={k}"));

    let fm = &ops.f_minus;
    let fp = &ops.f_plus;
    let fpp = &ops.f_plus_plus;
    let fmp = &ops.f_minus_plus;
    let n = &ops.number;

    // type (i)
    report.residual(
        "f-f+ - q f+f- = 1",
        fm.q_commutator(fp, d.q)?.sub(&one)?.max_abs(),
        tol,
    );
    report.residual("[N,f-] = -f-", n.commutator(fm)?.add(fm)?.max_abs(), tol);
    report.residual("[N,f+] = +f+", n.commutator(fp)?.sub(fp)?.max_abs(), tol);
    report.residual("(f-)^k = 0", fm.power(k).max_abs(), tol);
    report.residual("(f+)^k = 0", fp.power(k).max_abs(), tol);

    // type (ii)
    report.residual(
        "f++f-+ - qbar f-+f++ = 1",
        fpp.q_commutator(fmp, d.qbar)?.sub(&one)?.max_abs(),
        tol,
    );
    report.residual("[N,f++] = -f++", n.commutator(fpp)?.add(fpp)?.max_abs(), tol);
    report.residual("[N,f-+] = +f-+", n.commutator(fmp)?.sub(fmp)?.max_abs(), tol);
    report.residual("(f++)^k = 0", fpp.power(k).max_abs(), tol);
    report.residual("(f-+)^k = 0", fmp.power(k).max_abs(), tol);

    // type (iii)
    report.residual(
        "f-f++ - q^{-1/2} f++f- = 0",
        fm.q_commutator(fpp, d.q_half_inv())?.max_abs(),
        tol,
    );
    report.residual(
        "f+f-+ - q^{+1/2} f-+f+ = 0",
        fp.q_commutator(fmp, d.q_half())?.max_abs(),
        tol,
    );

    // Hermitean conjugation
    report.residual("f++ = (f+)^dagger", fpp.sub(&fp.adjoint())?.max_abs(), tol);
    report.residual("f-+ = (f-)^dagger", fmp.sub(&fm.adjoint())?.max_abs(), tol);
    report.residual("N = N^dagger", n.sub(&n.adjoint())?.max_abs(), tol);

    // nilpotency index is sharp
    report.nonzero("(f-)^{k-1} != 0", fm.power(k - 1).max_abs(), 0.1);
    report.nonzero("(f+)^{k-1} != 0", fp.power(k - 1).max_abs(), 0.1);

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::StateVector;

    #[test]
    fn k2_matrices_are_pauli_ladder() {
        let ops = build_fk(2).unwrap();
        // [1]_q = 1 for any q, so the k = 2 matrices are the fermion ladder.
        assert!((ops.f_minus[(0, 1)] - 1.0).norm() < 1e-15);
        assert!(ops.f_minus[(1, 0)].norm() < 1e-15);
        assert!((ops.f_plus[(1, 0)] - 1.0).norm() < 1e-15);
        // f-f+ + f+f- = 1 (q = -1)
        let anti = ops
            .f_minus
            .compose(&ops.f_plus)
            .unwrap()
            .add(&ops.f_plus.compose(&ops.f_minus).unwrap())
            .unwrap();
        let one = Operator::identity(Basis::Fermion { k: 2 });
        assert!(anti.sub(&one).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn k3_raising_matrix_element() {
        let ops = build_fk(3).unwrap();
        // f+|1> = principal_sqrt([2]_q)|2> = exp(i pi/6)|2>
        let expect = C64::from_polar(1.0, std::f64::consts::PI / 6.0);
        assert!((ops.f_plus[(2, 1)] - expect).norm() < 1e-14);
    }

    #[test]
    fn annihilates_vacuum_and_top() {
        for k in 2..=6 {
            let ops = build_fk(k).unwrap();
            let basis = Basis::Fermion { k };
            let vac = StateVector::basis_state(basis, 0);
            assert_eq!(ops.f_minus.apply(&vac).unwrap().max_abs(), 0.0);
            let top = StateVector::basis_state(basis, k - 1);
            assert_eq!(ops.f_plus.apply(&top).unwrap().max_abs(), 0.0);
        }
        assert!(build_fk(1).is_err());
    }

    #[test]
    fn relations_hold_for_small_k() {
        for k in 2..=6 {
            let report = verify_fk_relations(k, 1e-10).unwrap();
            assert!(report.overall_pass(), "k={k}: {report:?}");
        }
    }

    #[test]
    fn klein_operator_eigenvalues() {
        // K = f-f+ - f+f- is diagonal with entries q^n, since
        // [n+1]_q - [n]_q = q^n.
        for k in 2..=6 {
            let ops = build_fk(k).unwrap();
            let klein = ops.f_minus.commutator(&ops.f_plus).unwrap();
            assert!(klein.is_diagonal(1e-12));
            for (n, z) in klein.diagonal().into_iter().enumerate() {
                let expect = ops.deformation.q.powu(n as u32);
                assert!((z - expect).norm() < 1e-12, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn boson_truncation_structure() {
        let b = build_boson(2).unwrap();
        let comm = b.b_minus.commutator(&b.b_plus).unwrap();
        // smallest truncation: diag(1, -1)
        assert!((comm[(0, 0)] - 1.0).norm() < 1e-15);
        assert!((comm[(1, 1)] + 1.0).norm() < 1e-15);
        assert!(build_boson(1).is_err());

        let b = build_boson(8).unwrap();
        let vac = StateVector::basis_state(Basis::Boson { cutoff: 8 }, 0);
        assert_eq!(b.b_minus.apply(&vac).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn fermion_and_boson_blocks_commute() {
        let k = 3;
        let cutoff = 5;
        let f = build_fk(k).unwrap();
        let b = build_boson(cutoff).unwrap();
        let ib = Operator::identity(Basis::Boson { cutoff });
        let ik = Operator::identity(Basis::Fermion { k });
        for bop in [&b.b_minus, &b.b_plus] {
            for fop in [&f.f_minus, &f.f_plus] {
                let lhs = Operator::tensor(bop, &ik).unwrap();
                let rhs = Operator::tensor(&ib, fop).unwrap();
                assert_eq!(lhs.commutator(&rhs).unwrap().max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn nilpotency_is_sharp() {
        for k in 2..=6 {
            let ops = build_fk(k).unwrap();
            assert!(ops.f_minus.power(k - 1).max_abs() > 0.1);
            assert_eq!(ops.f_minus.power(k).max_abs(), 0.0);
        }
    }
}
