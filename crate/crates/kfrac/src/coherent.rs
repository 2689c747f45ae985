//! k-fermionic coherent states, their duals, overlaps, over-completeness,
//! coherence factors, fractional supercoherent states, the displacement
//! operator, and the graded-sector (Vourdas) states.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::KfracError;
use crate::grassmann::{GeneratorKind, GrassmannAlgebra, GrassmannElement};
use crate::kfermion::{build_boson, build_fk};
use crate::operators::{Basis, Operator, StateVector};
use crate::qnum::root_qfactorial;
use crate::report::CheckReport;

/// Tail bound below which a truncated bosonic coherent state is accepted.
pub const TAIL_LIMIT: f64 = 1e-12;

/// A Fock vector whose coefficients are Grassmann elements. Grassmann scalars
/// commute with all Fock operators; operators act on the label index only.
#[derive(Clone, Debug)]
pub struct GrassmannState {
    pub basis: Basis,
    pub coeffs: Vec<GrassmannElement>,
}

impl GrassmannState {
    pub fn zeros(basis: Basis, algebra: &Arc<GrassmannAlgebra>) -> Self {
        let coeffs = (0..basis.dim()).map(|_| GrassmannElement::zero(algebra)).collect();
        Self { basis, coeffs }
    }

    pub fn algebra(&self) -> &Arc<GrassmannAlgebra> {
        self.coeffs[0].algebra()
    }

    /// Apply an operator as a ket: `out_i = sum_j A_ij c_j`.
    pub fn apply(&self, op: &Operator) -> Result<Self, KfracError> {
        if op.basis() != self.basis {
            return Err(KfracError::BasisMismatch { left: op.basis(), right: self.basis });
        }
        let d = self.basis.dim();
        let mut out = Self::zeros(self.basis, self.algebra());
        for i in 0..d {
            let mut acc = GrassmannElement::zero(self.algebra());
            for j in 0..d {
                let a = op[(i, j)];
                if a.norm_sqr() != 0.0 {
                    acc = acc.add(&self.coeffs[j].scale(a))?;
                }
            }
            out.coeffs[i] = acc;
        }
        Ok(out)
    }

    /// Apply an operator as a bra: `out_j = sum_i c_i A_ij`.
    pub fn apply_bra(&self, op: &Operator) -> Result<Self, KfracError> {
        if op.basis() != self.basis {
            return Err(KfracError::BasisMismatch { left: op.basis(), right: self.basis });
        }
        let d = self.basis.dim();
        let mut out = Self::zeros(self.basis, self.algebra());
        for j in 0..d {
            let mut acc = GrassmannElement::zero(self.algebra());
            for i in 0..d {
                let a = op[(i, j)];
                if a.norm_sqr() != 0.0 {
                    acc = acc.add(&self.coeffs[i].scale(a))?;
                }
            }
            out.coeffs[j] = acc;
        }
        Ok(out)
    }

    /// Multiply every coefficient by `g` from the left.
    pub fn left_mul(&self, g: &GrassmannElement) -> Result<Self, KfracError> {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = g.mul(c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x = x.scale(c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, KfracError> {
        if self.basis != rhs.basis {
            return Err(KfracError::BasisMismatch { left: self.basis, right: rhs.basis });
        }
        let mut out = self.clone();
        for (x, y) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x = x.sub(y)?;
        }
        Ok(out)
    }

    /// Largest coefficient modulus over all labels and monomials.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.max_abs()).fold(0.0, f64::max)
    }
}

fn base_for(algebra: &GrassmannAlgebra, var: usize) -> C64 {
    match algebra.generator_kind(var) {
        GeneratorKind::Unbarred => algebra.deformation().q,
        GeneratorKind::Barred => algebra.deformation().qbar,
    }
}

/// The dual variable of `var`: same primed status, opposite bar.
fn partner(algebra: &GrassmannAlgebra, var: usize) -> usize {
    match algebra.generator_count() {
        2 => 1 - var,
        4 => (var + 2) % 4,
        _ => unreachable!("algebras are built with 2 or 4 generators"),
    }
}

/// Coherent ket for the variable `var`:
/// `sum_n var^n / ([n]_p!)^{1/2} |n>` with `p = q` for an unbarred variable
/// and `p = qbar` for a barred one.
pub fn coherent_ket(
    algebra: &Arc<GrassmannAlgebra>,
    var: usize,
) -> Result<GrassmannState, KfracError> {
    let k = algebra.order();
    let p = base_for(algebra, var);
    let g = GrassmannElement::generator(algebra, var)?;
    let mut state = GrassmannState::zeros(Basis::Fermion { k }, algebra);
    for n in 0..k {
        let denom = root_qfactorial(n, p)?;
        state.coeffs[n] = g.pow(n)?.scale(1.0 / denom);
    }
    Ok(state)
}

/// Dual of [`coherent_ket`]: `sum_n <n| w^n / ([n]_pw!)^{1/2}` where `w` is
/// the partner variable of `var`.
pub fn coherent_bra(
    algebra: &Arc<GrassmannAlgebra>,
    var: usize,
) -> Result<GrassmannState, KfracError> {
    coherent_ket(algebra, partner(&**algebra, var))
}

/// `sum_n bra_n ket_n` with the bra coefficient standing left of the ket
/// coefficient under the braided product.
pub fn overlap(bra: &GrassmannState, ket: &GrassmannState) -> Result<GrassmannElement, KfracError> {
    if bra.basis != ket.basis {
        return Err(KfracError::BasisMismatch { left: bra.basis, right: ket.basis });
    }
    let mut acc = GrassmannElement::zero(bra.algebra());
    for (b, k) in bra.coeffs.iter().zip(&ket.coeffs) {
        acc = acc.add(&b.mul(k)?)?;
    }
    Ok(acc)
}

/// Eigenstate checks: `f_- |theta) = theta |theta)`,
/// `f_+^+ |thetabar) = thetabar |thetabar)`, and the dual versions.
pub fn check_eigenstate(k: usize, tol: f64) -> Result<CheckReport, KfracError> {
    let alg = GrassmannAlgebra::pair(k)?;
    let ops = build_fk(k)?;
    let theta = GrassmannElement::generator(&alg, 0)?;
    let thetabar = GrassmannElement::generator(&alg, 1)?;
    let mut report = CheckReport::new(format!("coherent-eigenstate k={k}"));

    let ket_t = coherent_ket(&alg, 0)?;
    let res = ket_t.apply(&ops.f_minus)?.sub(&ket_t.left_mul(&theta)?)?;
    report.residual("f- |theta) = theta |theta)", res.max_abs(), tol);

    let ket_tb = coherent_ket(&alg, 1)?;
    let res = ket_tb.apply(&ops.f_plus_plus)?.sub(&ket_tb.left_mul(&thetabar)?)?;
    report.residual("f++ |thetabar) = thetabar |thetabar)", res.max_abs(), tol);

    let bra_t = coherent_bra(&alg, 0)?;
    let res = bra_t.apply_bra(&ops.f_minus_plus)?.sub(&bra_t.left_mul(&thetabar)?)?;
    report.residual("(theta| f-+ = thetabar (theta|", res.max_abs(), tol);

    let bra_tb = coherent_bra(&alg, 1)?;
    let res = bra_tb.apply_bra(&ops.f_plus)?.sub(&bra_tb.left_mul(&theta)?)?;
    report.residual("(thetabar| f+ = theta (thetabar|", res.max_abs(), tol);

    Ok(report)
}

/// Overlap identities: `(theta'|theta) = e_q(thetabar' theta)` and the barred
/// counterpart, coefficient-wise on the four-generator algebra, plus the
/// unprimed specialization `(theta|theta) = e_q(thetabar theta)`.
pub fn overlap_exponential_check(k: usize, tol: f64) -> Result<CheckReport, KfracError> {
    let mut report = CheckReport::new(format!("overlap-exponential k={k}"));
    let quad = GrassmannAlgebra::quad(k)?;
    let d = quad.deformation();

    // (theta'|theta): bra variable thetabar' (index 3), ket variable theta (0)
    let lhs = overlap(&coherent_bra(&quad, 1)?, &coherent_ket(&quad, 0)?)?;
    let arg = GrassmannElement::generator(&quad, 3)?.mul(&GrassmannElement::generator(&quad, 0)?)?;
    let rhs = arg.qexp(d.q, k)?;
    report.residual("(theta'|theta) = e_q(thetabar' theta)", lhs.sub(&rhs)?.max_abs(), tol);

    // (thetabar'|thetabar): bra variable theta' (1), ket variable thetabar (2)
    let lhs = overlap(&coherent_bra(&quad, 3)?, &coherent_ket(&quad, 2)?)?;
    let arg = GrassmannElement::generator(&quad, 1)?.mul(&GrassmannElement::generator(&quad, 2)?)?;
    let rhs = arg.qexp(d.qbar, k)?;
    report.residual("(thetabar'|thetabar) = e_qbar(theta' thetabar)", lhs.sub(&rhs)?.max_abs(), tol);

    // unprimed specialization on the two-generator algebra
    let pair = GrassmannAlgebra::pair(k)?;
    let lhs = overlap(&coherent_bra(&pair, 0)?, &coherent_ket(&pair, 0)?)?;
    let arg = GrassmannElement::generator(&pair, 1)?.mul(&GrassmannElement::generator(&pair, 0)?)?;
    let rhs = arg.qexp(pair.deformation().q, k)?;
    report.residual("(theta|theta) = e_q(thetabar theta)", lhs.sub(&rhs)?.max_abs(), tol);

    Ok(report)
}

/// Coefficient of the monomial `first^{k-1} second^{k-1}` written in that
/// variable order; the two iterated Grassmann integrals of the resolution of
/// the identity reduce to exactly this extraction.
pub fn double_integrate(
    x: &GrassmannElement,
    first: usize,
    second: usize,
) -> Result<C64, KfracError> {
    let alg = Arc::clone(x.algebra());
    let top = alg.order() - 1;
    // Build the requested monomial and read off its normal-form coefficient;
    // dividing by that monomial's own normal-ordering factor converts the
    // normal-form coefficient of x into the coefficient in the requested
    // ordering.
    let monomial = GrassmannElement::generator(&alg, first)?
        .pow(top)?
        .mul(&GrassmannElement::generator(&alg, second)?.pow(top)?)?;
    let (exps, factor) = monomial
        .terms()
        .next()
        .map(|(e, c)| (e.clone(), *c))
        .expect("top monomial never vanishes");
    Ok(x.coefficient(&exps) / factor)
}

/// Over-completeness: the weighted double Grassmann integral of
/// `|theta) mu (theta|` reproduces the identity matrix, in both variable
/// orders.
pub fn overcompleteness_check(k: usize, tol: f64) -> Result<CheckReport, KfracError> {
    let alg = GrassmannAlgebra::pair(k)?;
    let d = alg.deformation();
    let theta = GrassmannElement::generator(&alg, 0)?;
    let thetabar = GrassmannElement::generator(&alg, 1)?;
    let mut report = CheckReport::new(format!("overcompleteness k={k}"));

    // mu(a, b) = sum_n ([n]_q! [n]_qbar!)^{1/2} a^{k-1-n} b^{k-1-n}
    let weight = |a: &GrassmannElement, b: &GrassmannElement| -> Result<GrassmannElement, KfracError> {
        let mut mu = GrassmannElement::zero(&alg);
        for n in 0..k {
            let w = root_qfactorial(n, d.q)? * root_qfactorial(n, d.qbar)?;
            mu = mu.add(&a.pow(k - 1 - n)?.mul(&b.pow(k - 1 - n)?)?.scale(w))?;
        }
        Ok(mu)
    };

    for (name, ket_var, first, second) in [
        ("int dtheta |theta) mu (theta| dthetabar = 1", 0usize, 0usize, 1usize),
        ("int dthetabar |thetabar) mu (thetabar| dtheta = 1", 1, 1, 0),
    ] {
        let ket = coherent_ket(&alg, ket_var)?;
        let bra = coherent_bra(&alg, ket_var)?;
        let (a, b) = if ket_var == 0 { (&theta, &thetabar) } else { (&thetabar, &theta) };
        let mu = weight(a, b)?;
        let mut residual = 0.0f64;
        for m in 0..k {
            for n in 0..k {
                let x = ket.coeffs[m].mul(&mu)?.mul(&bra.coeffs[n])?;
                let value = double_integrate(&x, first, second)?;
                let expect = if m == n { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                residual = residual.max((value - expect).norm());
            }
        }
        report.residual(name, residual, tol);
    }

    Ok(report)
}

/// The order-m coherence factor `|g^(m)|`.
///
/// Numerator and denominator are Grassmann elements; since Grassmann division
/// is not generally defined, the factor is the modulus of the ratio of their
/// lowest-degree monomial coefficients (both sit at `theta^m thetabar^m`).
/// A vanishing numerator gives 0.
pub fn coherence_factor(k: usize, m: usize) -> Result<f64, KfracError> {
    let alg = GrassmannAlgebra::pair(k)?;
    let ops = build_fk(k)?;
    let ket = coherent_ket(&alg, 0)?;
    let bra = coherent_bra(&alg, 0)?;

    let lower_m = ops.f_minus.power(m);
    let raise_m = ops.f_minus_plus.power(m);
    let numerator = overlap(&bra, &ket.apply(&lower_m)?.apply(&raise_m)?)?;
    if numerator.is_zero(1e-14) {
        return Ok(0.0);
    }

    let base = overlap(
        &bra,
        &ket.apply(&ops.f_minus)?.apply(&ops.f_minus_plus)?,
    )?;
    let denominator = base.pow(m)?;

    let lowest = |x: &GrassmannElement| -> Option<(Vec<u8>, C64)> {
        x.terms()
            .filter(|(_, c)| c.norm() > 1e-14)
            .min_by_key(|(e, _)| e.iter().map(|&v| v as usize).sum::<usize>())
            .map(|(e, c)| (e.clone(), *c))
    };
    let (ne, nc) = lowest(&numerator).expect("nonzero numerator has a lowest term");
    let (de, dc) = lowest(&denominator).expect("denominator is nonzero for m >= 1");
    if ne != de {
        return Err(KfracError::LowestDegreeMismatch { numerator: ne, denominator: de });
    }
    Ok((nc / dc).norm())
}

fn float_factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

fn tail_check(z: C64, cutoff: usize) -> Result<(), KfracError> {
    let tail = z.norm().powi(cutoff as i32) / float_factorial(cutoff).sqrt();
    if tail >= TAIL_LIMIT {
        return Err(KfracError::TailTooLarge { tail, limit: TAIL_LIMIT });
    }
    Ok(())
}

/// The fractional supercoherent state
/// `|z, theta) = sum_r z^r/sqrt(r!) |r> (x) sum_s theta^s/([s]_q!)^{1/2} |s>`
/// on the truncated tensor basis.
pub fn fractional_supercoherent(
    z: C64,
    k: usize,
    cutoff: usize,
) -> Result<GrassmannState, KfracError> {
    let alg = GrassmannAlgebra::pair(k)?;
    tail_check(z, cutoff)?;
    let d = alg.deformation();
    let theta = GrassmannElement::generator(&alg, 0)?;
    let basis = Basis::Tensor { cutoff, k };
    let mut state = GrassmannState::zeros(basis, &alg);
    for r in 0..cutoff {
        let boson = z.powu(r as u32) / float_factorial(r).sqrt();
        for s in 0..k {
            let fermion = theta.pow(s)?.scale(1.0 / root_qfactorial(s, d.q)?);
            state.coeffs[r * k + s] = fermion.scale(boson);
        }
    }
    Ok(state)
}

/// Apply the displacement operator `D_q(z, theta) = exp(z b_+) e_q(theta f_+)`
/// to the tensor vacuum.
pub fn displacement_apply(z: C64, k: usize, cutoff: usize) -> Result<GrassmannState, KfracError> {
    let alg = GrassmannAlgebra::pair(k)?;
    tail_check(z, cutoff)?;
    let d = alg.deformation();
    let theta = GrassmannElement::generator(&alg, 0)?;
    let fk = build_fk(k)?;
    let bos = build_boson(cutoff)?;
    let basis = Basis::Tensor { cutoff, k };
    let raise_f = Operator::tensor(&Operator::identity(Basis::Boson { cutoff }), &fk.f_plus)?;
    let raise_b = Operator::tensor(&bos.b_plus, &Operator::identity(Basis::Fermion { k }))?;

    let mut vacuum = GrassmannState::zeros(basis, &alg);
    vacuum.coeffs[0] = GrassmannElement::one(&alg);

    // e_q(theta f_+): theta commutes with Fock operators, so
    // (theta f_+)^n = theta^n (f_+)^n.
    let mut state = GrassmannState::zeros(basis, &alg);
    let mut powered = vacuum.clone();
    let mut fac = C64::new(1.0, 0.0);
    for n in 0..k {
        if n > 0 {
            powered = powered.apply(&raise_f)?;
            fac *= crate::qnum::qnumber(n as f64, d.q)?;
        }
        state = state.add_state(&powered.left_mul(&theta.pow(n)?)?.scale(1.0 / fac))?;
    }

    // exp(z b_+); the truncated b_+ is nilpotent so the series is finite.
    let mut out = GrassmannState::zeros(basis, &alg);
    let mut powered = state;
    let mut fac = 1.0f64;
    for r in 0..cutoff {
        if r > 0 {
            powered = powered.apply(&raise_b)?.scale(z);
            fac *= r as f64;
        }
        out = out.add_state(&powered.scale(C64::new(1.0 / fac, 0.0)))?;
    }
    Ok(out)
}

impl GrassmannState {
    fn add_state(&self, rhs: &Self) -> Result<Self, KfracError> {
        if self.basis != rhs.basis {
            return Err(KfracError::BasisMismatch { left: self.basis, right: rhs.basis });
        }
        let mut out = self.clone();
        for (x, y) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x = x.add(y)?;
        }
        Ok(out)
    }
}

/// The graded-sector coherent state
/// `|z, k, s) = sum_r z^{kr}/sqrt(r!) |kr + s>` on a boson Fock space of
/// dimension `cutoff * k`.
pub fn vourdas_state(z: C64, k: usize, s: usize, cutoff: usize) -> Result<StateVector, KfracError> {
    tail_check(z.powu(k as u32), cutoff)?;
    let basis = Basis::Boson { cutoff: cutoff * k };
    let mut v = StateVector::zeros(basis);
    for r in 0..cutoff {
        v.coeffs[k * r + s] = z.powu((k * r) as u32) / float_factorial(r).sqrt();
    }
    Ok(v)
}

/// Check the development of `|z^k, theta)` over the graded sectors under the
/// index map `|kr + s> <-> |r> (x) |s>`.
pub fn vourdas_decomposition_check(z: C64, k: usize, cutoff: usize, tol: f64) -> Result<CheckReport, KfracError> {
    let alg = GrassmannAlgebra::pair(k)?;
    let d = alg.deformation();
    let theta = GrassmannElement::generator(&alg, 0)?;
    let mut report = CheckReport::new(format!("vourdas-decomposition k={k}"));

    let whole = fractional_supercoherent(z.powu(k as u32), k, cutoff)?;
    let basis = Basis::Tensor { cutoff, k };
    let mut assembled = GrassmannState::zeros(basis, &alg);
    for s in 0..k {
        let sector = vourdas_state(z, k, s, cutoff)?;
        let weight = theta.pow(s)?.scale(1.0 / root_qfactorial(s, d.q)?);
        for r in 0..cutoff {
            assembled.coeffs[r * k + s] =
                assembled.coeffs[r * k + s].add(&weight.scale(sector.coeffs[k * r + s]))?;
        }
    }
    report.residual(
        "|z^k, theta) = sum_s theta^s/([s]_q!)^{1/2} |z, k, s)",
        whole.sub(&assembled)?.max_abs(),
        tol,
    );

    // sector support: |z, k, s) lives on labels congruent to s mod k
    let mut support = 0.0f64;
    for s in 0..k {
        let sector = vourdas_state(z, k, s, cutoff)?;
        for (idx, c) in sector.coeffs.iter().enumerate() {
            if idx % k != s {
                support = support.max(c.norm());
            }
        }
    }
    report.residual("sector support on labels = s (mod k)", support, tol);

    Ok(report)
}

/// `b_- f_- |z, theta) = z theta |z, theta)` within the truncation tail.
pub fn eigenstate_bf_check(z: C64, k: usize, cutoff: usize) -> Result<CheckReport, KfracError> {
    let alg = GrassmannAlgebra::pair(k)?;
    let theta = GrassmannElement::generator(&alg, 0)?;
    let fk = build_fk(k)?;
    let bos = build_boson(cutoff)?;
    let bf = Operator::tensor(&bos.b_minus, &fk.f_minus)?;
    let state = fractional_supercoherent(z, k, cutoff)?;
    let lhs = state.apply(&bf)?;
    let rhs = state.left_mul(&theta)?.scale(z);
    let bound = z.norm().powi(cutoff as i32) / float_factorial(cutoff - 1).sqrt();
    let mut report = CheckReport::new(format!("supercoherent-eigenstate k={k}"));
    report.residual(
        "b- f- |z,theta) = z theta |z,theta)",
        lhs.sub(&rhs)?.max_abs(),
        bound.max(1e-13),
    );
    Ok(report)
}
