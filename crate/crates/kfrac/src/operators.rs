//! Dense complex operator kernel over labeled finite bases.
//!
//! Every space in this crate is small (a few hundred dimensions at most), so
//! operators are plain row-major `Vec<Complex64>` matrices tagged with their
//! basis. Tensor bases enumerate pairs `(r, n)` in r-major order, which makes
//! the correspondence `|k r + s> <-> |r> (x) |s>` index arithmetic.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::KfracError;

/// A labeled finite basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// k-fermion number states `|n>`, `n = 0..k-1`.
    Fermion { k: usize },
    /// Truncated boson number states `|r>`, `r = 0..cutoff-1`.
    Boson { cutoff: usize },
    /// Pairs `(r, n)` in r-major order: index `= r * k + n`.
    Tensor { cutoff: usize, k: usize },
}

/// One basis label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    Fermion(usize),
    Boson(usize),
    Pair { r: usize, n: usize },
}

impl Basis {
    pub fn dim(&self) -> usize {
        match *self {
            Basis::Fermion { k } => k,
            Basis::Boson { cutoff } => cutoff,
            Basis::Tensor { cutoff, k } => cutoff * k,
        }
    }

    pub fn label(&self, index: usize) -> BasisLabel {
        debug_assert!(index < self.dim());
        match *self {
            Basis::Fermion { .. } => BasisLabel::Fermion(index),
            Basis::Boson { .. } => BasisLabel::Boson(index),
            Basis::Tensor { k, .. } => BasisLabel::Pair { r: index / k, n: index % k },
        }
    }

    pub fn index(&self, label: BasisLabel) -> usize {
        match (*self, label) {
            (Basis::Fermion { .. }, BasisLabel::Fermion(n)) => n,
            (Basis::Boson { .. }, BasisLabel::Boson(r)) => r,
            (Basis::Tensor { k, .. }, BasisLabel::Pair { r, n }) => r * k + n,
            _ => panic!("label does not belong to this basis"),
        }
    }
}

/// Dense square operator over a [`Basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    basis: Basis,
    data: Vec<C64>,
}

impl Operator {
    pub fn zeros(basis: Basis) -> Self {
        let d = basis.dim();
        Self { basis, data: vec![C64::new(0.0, 0.0); d * d] }
    }

    pub fn identity(basis: Basis) -> Self {
        let mut m = Self::zeros(basis);
        for i in 0..basis.dim() {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(basis: Basis, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let d = basis.dim();
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(f(i, j));
            }
        }
        Self { basis, data }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn check_basis(&self, other: &Operator) -> Result<(), KfracError> {
        if self.basis != other.basis {
            return Err(KfracError::BasisMismatch { left: self.basis, right: other.basis });
        }
        Ok(())
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Operator) -> Result<Operator, KfracError> {
        self.check_basis(rhs)?;
        let d = self.dim();
        let mut out = Operator::zeros(self.basis);
        for i in 0..d {
            for l in 0..d {
                let a = self[(i, l)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * rhs[(l, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Operator) -> Result<Operator, KfracError> {
        self.check_basis(rhs)?;
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x += y;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Operator) -> Result<Operator, KfracError> {
        self.check_basis(rhs)?;
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x -= y;
        }
        Ok(out)
    }

    pub fn scale(&self, c: C64) -> Operator {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= c;
        }
        out
    }

    /// Integer power; `power(A, 0)` is the identity.
    pub fn power(&self, n: usize) -> Operator {
        let mut out = Operator::identity(self.basis);
        for _ in 0..n {
            out = out.compose(self).expect("same basis");
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Operator {
        Operator::from_fn(self.basis, |i, j| self[(j, i)].conj())
    }

    /// `AB - c BA`; `c = 1` gives the plain commutator.
    pub fn q_commutator(&self, rhs: &Operator, c: C64) -> Result<Operator, KfracError> {
        let ab = self.compose(rhs)?;
        let ba = rhs.compose(self)?;
        ab.sub(&ba.scale(c))
    }

    pub fn commutator(&self, rhs: &Operator) -> Result<Operator, KfracError> {
        self.q_commutator(rhs, C64::new(1.0, 0.0))
    }

    /// Kronecker product of a boson-basis operator with a fermion-basis
    /// operator, on the r-major pair basis.
    pub fn tensor(boson: &Operator, fermion: &Operator) -> Result<Operator, KfracError> {
        let (cutoff, k) = match (boson.basis, fermion.basis) {
            (Basis::Boson { cutoff }, Basis::Fermion { k }) => (cutoff, k),
            _ => {
                return Err(KfracError::BasisMismatch {
                    left: boson.basis,
                    right: fermion.basis,
                })
            }
        };
        let basis = Basis::Tensor { cutoff, k };
        Ok(Operator::from_fn(basis, |i, j| {
            let (r1, n1) = (i / k, i % k);
            let (r2, n2) = (j / k, j % k);
            boson[(r1, r2)] * fermion[(n1, n2)]
        }))
    }

    /// Projection onto the subspace with boson index `r < cutoff - margin`,
    /// compressing rows and columns. Identities that are exact away from the
    /// truncation edge become exact here.
    pub fn restrict_safe(&self, margin: usize) -> Result<Operator, KfracError> {
        match self.basis {
            Basis::Tensor { cutoff, k } => {
                if margin >= cutoff {
                    return Err(KfracError::InvalidMargin { margin, cutoff });
                }
                let basis = Basis::Tensor { cutoff: cutoff - margin, k };
                Ok(Operator::from_fn(basis, |i, j| self[(i, j)]))
            }
            Basis::Boson { cutoff } => {
                if margin >= cutoff {
                    return Err(KfracError::InvalidMargin { margin, cutoff });
                }
                let basis = Basis::Boson { cutoff: cutoff - margin };
                Ok(Operator::from_fn(basis, |i, j| self[(i, j)]))
            }
            basis => Err(KfracError::NotTensorBasis { basis }),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest off-diagonal entry modulus.
    pub fn off_diagonal_max(&self) -> f64 {
        let d = self.dim();
        let mut m = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    m = m.max(self[(i, j)].norm());
                }
            }
        }
        m
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.off_diagonal_max() < tol
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self[(i, i)]).collect()
    }

    /// Apply to a state vector.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector, KfracError> {
        if self.basis != v.basis {
            return Err(KfracError::BasisMismatch { left: self.basis, right: v.basis });
        }
        let d = self.dim();
        let mut out = StateVector::zeros(self.basis);
        for i in 0..d {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..d {
                acc += self[(i, j)] * v.coeffs[j];
            }
            out.coeffs[i] = acc;
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for Operator {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.basis.dim() + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Operator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.basis.dim() + j]
    }
}

/// Complex coefficient vector over a [`Basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub basis: Basis,
    pub coeffs: Vec<C64>,
}

impl StateVector {
    pub fn zeros(basis: Basis) -> Self {
        Self { basis, coeffs: vec![C64::new(0.0, 0.0); basis.dim()] }
    }

    pub fn basis_state(basis: Basis, index: usize) -> Self {
        let mut v = Self::zeros(basis);
        v.coeffs[index] = C64::new(1.0, 0.0);
        v
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, rhs: &StateVector) -> Result<StateVector, KfracError> {
        if self.basis != rhs.basis {
            return Err(KfracError::BasisMismatch { left: self.basis, right: rhs.basis });
        }
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Ok(StateVector { basis: self.basis, coeffs })
    }

    pub fn scale(&self, c: C64) -> StateVector {
        StateVector { basis: self.basis, coeffs: self.coeffs.iter().map(|z| z * c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_op(basis: Basis, seed: u64) -> Operator {
        // Small deterministic LCG; no need for a real RNG here.
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        Operator::from_fn(basis, |_, _| C64::new(next(), next()))
    }

    #[test]
    fn identity_laws() {
        let basis = Basis::Fermion { k: 4 };
        let a = random_op(basis, 7);
        let id = Operator::identity(basis);
        assert!((id.compose(&a).unwrap().sub(&a).unwrap()).max_abs() < 1e-15);
        assert!((a.power(0).sub(&id).unwrap()).max_abs() < 1e-15);
    }

    #[test]
    fn adjoint_involution_and_product_rule() {
        let basis = Basis::Fermion { k: 5 };
        let a = random_op(basis, 1);
        let b = random_op(basis, 2);
        assert!((a.adjoint().adjoint().sub(&a).unwrap()).max_abs() < 1e-15);
        let lhs = a.compose(&b).unwrap().adjoint();
        let rhs = b.adjoint().compose(&a.adjoint()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn q_commutator_self_vanishes() {
        let basis = Basis::Boson { cutoff: 6 };
        let a = random_op(basis, 3);
        assert!(a.q_commutator(&a, c(1.0, 0.0)).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let a = Operator::identity(Basis::Fermion { k: 3 });
        let b = Operator::identity(Basis::Fermion { k: 4 });
        assert!(matches!(a.compose(&b), Err(KfracError::BasisMismatch { .. })));
    }

    #[test]
    fn tensor_identity_and_mixed_product() {
        let ib = Operator::identity(Basis::Boson { cutoff: 5 });
        let ik = Operator::identity(Basis::Fermion { k: 3 });
        let id = Operator::tensor(&ib, &ik).unwrap();
        assert!(id.sub(&Operator::identity(Basis::Tensor { cutoff: 5, k: 3 })).unwrap().max_abs() < 1e-15);

        let a = random_op(Basis::Boson { cutoff: 5 }, 4);
        let b = random_op(Basis::Fermion { k: 3 }, 5);
        let x = random_op(Basis::Boson { cutoff: 5 }, 6);
        let y = random_op(Basis::Fermion { k: 3 }, 7);
        // (A (x) B)(X (x) Y) = AX (x) BY
        let lhs = Operator::tensor(&a, &b).unwrap().compose(&Operator::tensor(&x, &y).unwrap()).unwrap();
        let rhs = Operator::tensor(&a.compose(&x).unwrap(), &b.compose(&y).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn pair_label_order_is_r_major() {
        let basis = Basis::Tensor { cutoff: 3, k: 4 };
        assert_eq!(basis.label(0), BasisLabel::Pair { r: 0, n: 0 });
        assert_eq!(basis.label(4 * 2 + 3), BasisLabel::Pair { r: 2, n: 3 });
        assert_eq!(basis.index(BasisLabel::Pair { r: 1, n: 2 }), 6);
    }

    #[test]
    fn restrict_safe_behaviour() {
        let basis = Basis::Tensor { cutoff: 4, k: 2 };
        let a = random_op(basis, 8);
        let same = a.restrict_safe(0).unwrap();
        assert_eq!(same, a);
        let id = Operator::identity(basis).restrict_safe(2).unwrap();
        assert!(id.sub(&Operator::identity(Basis::Tensor { cutoff: 2, k: 2 })).unwrap().max_abs() < 1e-15);
        assert!(a.restrict_safe(4).is_err());

        // restriction commutes with addition and scaling
        let b = random_op(basis, 9);
        let lhs = a.add(&b).unwrap().restrict_safe(1).unwrap();
        let rhs = a.restrict_safe(1).unwrap().add(&b.restrict_safe(1).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn diagonal_helpers() {
        let basis = Basis::Fermion { k: 3 };
        assert_eq!(Operator::zeros(basis).max_abs(), 0.0);
        let mut d = Operator::zeros(basis);
        for i in 0..3 {
            d[(i, i)] = c(i as f64, 0.0);
        }
        assert!(d.is_diagonal(1e-12));
        assert_eq!(d.diagonal()[2], c(2.0, 0.0));
        let a = random_op(basis, 11);
        assert!(!a.is_diagonal(1e-3));
    }
}
