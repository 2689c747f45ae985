//! Generic-deformation oscillator and the numerical study of its
//! decomposition into a boson and a k-fermion as the deformation approaches a
//! root of unity.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::KfracError;
use crate::kfermion::build_fk;
use crate::operators::{Basis, Operator, StateVector};
use crate::qnum::{principal_sqrt, qnumber, root_qfactorial};
use crate::report::{LimitReport, LimitRow};

/// A pair of deformed ladder operators `a_- a_+ - Q a_+ a_- = 1` at generic
/// deformation `Q`, with the rescaled k-th powers that become bosons in the
/// root-of-unity limit.
#[derive(Clone, Debug)]
pub struct QuonOperators {
    pub q: C64,
    pub dim: usize,
    pub a_minus: Operator,
    pub a_plus: Operator,
}

/// Fock-type action `a_-|n> = ([n]_Q)^{1/2}|n-1>`,
/// `a_+|n> = ([n+1]_Q)^{1/2}|n+1>`, truncated at `dim`.
pub fn build_quon(q: C64, dim: usize) -> Result<QuonOperators, KfracError> {
    if (C64::new(1.0, 0.0) - q).norm() <= 1e-12 {
        return Err(KfracError::DegenerateDeformation { q });
    }
    if dim < 2 {
        return Err(KfracError::InvalidCutoff { cutoff: dim, min: 2 });
    }
    let basis = Basis::Boson { cutoff: dim };
    let mut a_minus = Operator::zeros(basis);
    let mut a_plus = Operator::zeros(basis);
    for n in 1..dim {
        let amp = principal_sqrt(qnumber(n as f64, q)?);
        a_minus[(n - 1, n)] = amp;
        a_plus[(n, n - 1)] = amp;
    }
    Ok(QuonOperators { q, dim, a_minus, a_plus })
}

/// Truncated deformed coherent state `|Z) = sum_n Z^n/([n]_Q!)^{1/2} |n>`.
pub fn quon_coherent(z: C64, q: C64, dim: usize) -> Result<StateVector, KfracError> {
    if (C64::new(1.0, 0.0) - q).norm() <= 1e-12 {
        return Err(KfracError::DegenerateDeformation { q });
    }
    // Tail control: for |Q| <= 1 the deformed factorial moduli are bounded
    // below by the ordinary product of |[n]_Q| factors; require the last
    // retained coefficient to be negligible.
    let last = z.powu((dim - 1) as u32) / root_qfactorial(dim - 1, q)?;
    if last.norm() >= 1e-10 {
        return Err(KfracError::TailTooLarge { tail: last.norm(), limit: 1e-10 });
    }
    let basis = Basis::Boson { cutoff: dim };
    let mut v = StateVector::zeros(basis);
    for n in 0..dim {
        v.coeffs[n] = z.powu(n as u32) / root_qfactorial(n, q)?;
    }
    Ok(v)
}

/// The deformation path `Q(eps) = exp(2 pi i (1 - eps)/k)`: approach along
/// the unit circle, keeping the q-integers bounded.
pub fn deformation_path(k: usize, epsilon: f64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * (1.0 - epsilon) / k as f64)
}

fn rescaled_kth_powers(
    k: usize,
    q: C64,
    dim: usize,
) -> Result<(Operator, Operator), KfracError> {
    let quon = build_quon(q, dim)?;
    let norm = root_qfactorial(k, q)?;
    Ok((
        quon.a_minus.power(k).scale(1.0 / norm),
        quon.a_plus.power(k).scale(1.0 / norm),
    ))
}

/// Embed a fermion-basis operator blockwise on the `dim = cutoff * k` Fock
/// space via `|kr + s> <-> |r> (x) |s>`.
fn embed_fermion(op: &Operator, cutoff: usize) -> Result<Operator, KfracError> {
    let k = match op.basis() {
        Basis::Fermion { k } => k,
        basis => return Err(KfracError::NotTensorBasis { basis }),
    };
    let tensor = Operator::tensor(&Operator::identity(Basis::Boson { cutoff }), op)?;
    // reinterpret on the flat Fock basis so it composes with the quon powers
    Ok(Operator::from_fn(Basis::Boson { cutoff: cutoff * k }, |i, j| tensor[(i, j)]))
}

/// Restrict a `cutoff * k`-dimensional Fock operator, reinterpreted on the
/// pair basis, to boson index `r < cutoff - margin`.
fn pair_restrict(op: &Operator, cutoff: usize, k: usize, margin: usize) -> Result<Operator, KfracError> {
    let reinterpreted = Operator::from_fn(Basis::Tensor { cutoff, k }, |i, j| op[(i, j)]);
    reinterpreted.restrict_safe(margin)
}

/// Deviation table for the boson + k-fermion decomposition along an epsilon
/// ladder (sorted descending). "Limit verified" means every deviation
/// sequence decreases strictly; no extrapolation to zero is attempted.
pub fn limit_study(
    k: usize,
    epsilons: &[f64],
    cutoff: usize,
) -> Result<LimitReport, KfracError> {
    if epsilons.is_empty() {
        return Err(KfracError::EmptyEpsilonLadder);
    }
    for &e in epsilons {
        if !(e > 0.0 && e < 0.5) {
            return Err(KfracError::InvalidEpsilon { value: e });
        }
    }
    let mut ladder: Vec<f64> = epsilons.to_vec();
    ladder.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ladder.dedup();

    let dim = cutoff * k;
    let fk = build_fk(k)?;
    let f_minus = embed_fermion(&fk.f_minus, cutoff)?;
    let f_plus = embed_fermion(&fk.f_plus, cutoff)?;
    let identity_safe = Operator::identity(Basis::Tensor { cutoff: cutoff - 2, k });

    let mut rows = Vec::new();
    let mut previous_b: Option<(Operator, Operator)> = None;
    let mut diffs: Vec<f64> = Vec::new();
    for &eps in &ladder {
        let q = deformation_path(k, eps);
        let (b_minus, b_plus) = rescaled_kth_powers(k, q, dim)?;

        // (a) bosonic commutator on the safe subspace (b_pm reach k levels,
        // margin 2 boson-equivalent indices isolates the truncation edge)
        let comm = b_minus.commutator(&b_plus)?;
        let boson_dev = pair_restrict(&comm, cutoff, k, 2)?
            .sub(&identity_safe)?
            .max_abs();

        // (b) mixed commutators with the embedded k-fermion blocks
        let mut mixed_dev = 0.0f64;
        for b in [&b_minus, &b_plus] {
            for f in [&f_minus, &f_plus] {
                let c = b.commutator(f)?;
                mixed_dev = mixed_dev.max(pair_restrict(&c, cutoff, k, 2)?.max_abs());
            }
        }

        // (c) the k-fermion relation at the current deformation
        let fermion_dev = fk
            .f_minus
            .q_commutator(&fk.f_plus, q)?
            .sub(&Operator::identity(Basis::Fermion { k }))?
            .max_abs();

        if let Some((pm, pp)) = &previous_b {
            let dm = pm.sub(&b_minus)?.max_abs();
            let dp = pp.sub(&b_plus)?.max_abs();
            diffs.push(dm.max(dp));
        }
        previous_b = Some((b_minus, b_plus));

        rows.push(LimitRow {
            epsilon: eps,
            boson_commutator: boson_dev,
            mixed_commutator: mixed_dev,
            fermion_relation: fermion_dev,
        });
    }

    let monotone = rows.windows(2).all(|w| {
        w[1].boson_commutator < w[0].boson_commutator
            && w[1].mixed_commutator < w[0].mixed_commutator
            && w[1].fermion_relation < w[0].fermion_relation
    });
    let cauchy = diffs.windows(2).all(|w| w[1] < w[0]);

    Ok(LimitReport { k, boson_cutoff: cutoff, rows, monotone, cauchy })
}
