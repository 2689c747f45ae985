//! Deformed arithmetic at (and near) roots of unity: q-integers, q-factorials,
//! deformed exponentials, and a fixed square-root branch.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::KfracError;

/// Bases closer to 1 than this are rejected by [`qnumber`].
pub const BASE_DEGENERACY_EPS: f64 = 1e-12;

/// The primitive k-th root of unity `q = exp(2*pi*i/k)` together with its
/// conjugate and the order `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Deformation {
    pub k: usize,
    pub q: C64,
    pub qbar: C64,
}

impl Deformation {
    pub fn new(k: usize) -> Result<Self, KfracError> {
        if k < 2 {
            return Err(KfracError::InvalidOrder { k });
        }
        let q = root_of_unity(k, 1);
        Ok(Self { k, q, qbar: q.conj() })
    }

    /// `q^{1/2} = exp(i*pi/k)`, the braiding phase.
    pub fn q_half(&self) -> C64 {
        C64::from_polar(1.0, PI / self.k as f64)
    }

    /// `q^{-1/2} = exp(-i*pi/k)`.
    pub fn q_half_inv(&self) -> C64 {
        C64::from_polar(1.0, -PI / self.k as f64)
    }
}

/// `exp(2*pi*i*j/k)` computed from polar form.
pub fn root_of_unity(k: usize, j: i64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64)
}

/// The q-integer `[x]_p = (1 - p^x)/(1 - p)` for real exponent `x`.
///
/// Rejects bases within `1e-12` of 1, where the quotient degenerates.
pub fn qnumber(x: f64, p: C64) -> Result<C64, KfracError> {
    let one = C64::new(1.0, 0.0);
    if (one - p).norm() <= BASE_DEGENERACY_EPS {
        return Err(KfracError::BaseTooCloseToOne { p });
    }
    Ok((one - p.powf(x)) / (one - p))
}

/// `[n]_p! = [1]_p [2]_p ... [n]_p`, with `[0]_p! = 1`.
pub fn qfactorial(n: usize, p: C64) -> Result<C64, KfracError> {
    let mut acc = C64::new(1.0, 0.0);
    for j in 1..=n {
        acc *= qnumber(j as f64, p)?;
    }
    Ok(acc)
}

/// `([n]_p!)^{1/2}` taken as the product of the principal square roots of the
/// individual q-integers.
///
/// For `p = q` a primitive root of unity and `n < k` every `[j]_q` has
/// argument in `[0, pi)`, so this factors compatibly with Hermitean
/// conjugation: `conj(root_qfactorial(n, q)) = root_qfactorial(n, qbar)`.
/// Squaring recovers `[n]_p!` exactly.
pub fn root_qfactorial(n: usize, p: C64) -> Result<C64, KfracError> {
    let mut acc = C64::new(1.0, 0.0);
    for j in 1..=n {
        acc *= principal_sqrt(qnumber(j as f64, p)?);
    }
    Ok(acc)
}

/// Principal square root: `w` with `w^2 = z` and `arg(w)` in `(-pi/2, pi/2]`.
pub fn principal_sqrt(z: C64) -> C64 {
    // Pin -0.0 imaginary parts to +0.0 so the negative real axis maps to +i.
    let z = C64::new(z.re, if z.im == 0.0 { 0.0 } else { z.im });
    z.sqrt()
}

/// Truncated p-deformed exponential of a complex argument:
/// `sum_{n=0}^{terms-1} x^n/[n]_p!`.
pub fn qexp(x: C64, p: C64, terms: usize) -> Result<C64, KfracError> {
    if terms < 1 {
        return Err(KfracError::InvalidTermCount { terms });
    }
    let mut acc = C64::new(0.0, 0.0);
    let mut pow = C64::new(1.0, 0.0);
    let mut fac = C64::new(1.0, 0.0);
    for n in 0..terms {
        if n > 0 {
            pow *= x;
            fac *= qnumber(n as f64, p)?;
        }
        acc += pow / fac;
    }
    Ok(acc)
}
