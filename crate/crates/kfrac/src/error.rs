use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::operators::Basis;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum KfracError {
    #[error("deformation order must satisfy k >= 2, got {k}")]
    InvalidOrder { k: usize },

    #[error("q-number base {p} is too close to 1")]
    BaseTooCloseToOne { p: C64 },

    #[error("deformed exponential needs at least one term, got {terms}")]
    InvalidTermCount { terms: usize },

    #[error("basis mismatch: {left:?} vs {right:?}")]
    BasisMismatch { left: Basis, right: Basis },

    #[error("operator on {basis:?} is not a tensor-basis operator")]
    NotTensorBasis { basis: Basis },

    #[error("restriction margin {margin} must be smaller than the boson cutoff {cutoff}")]
    InvalidMargin { margin: usize, cutoff: usize },

    #[error("boson cutoff must satisfy R >= {min}, got {cutoff}")]
    InvalidCutoff { cutoff: usize, min: usize },

    #[error("elements belong to different Grassmann algebras")]
    AlgebraMismatch,

    #[error("generator index {index} out of range for {count} generators")]
    NoSuchGenerator { index: usize, count: usize },

    #[error("coherent-state tail |z|^R/sqrt(R!) = {tail:.3e} exceeds {limit:.3e}; raise the boson cutoff")]
    TailTooLarge { tail: f64, limit: f64 },

    #[error("deformation Q = {q} is degenerate for the q-number formula")]
    DegenerateDeformation { q: C64 },

    #[error("operator expected to be diagonal has off-diagonal weight {residual:.3e} (tol {tol:.3e})")]
    NotDiagonal { residual: f64, tol: f64 },

    #[error("epsilon ladder entries must lie in (0, 0.5), got {value}")]
    InvalidEpsilon { value: f64 },

    #[error("epsilon ladder is empty")]
    EmptyEpsilonLadder,

    #[error("coherence factor numerator and denominator start at different monomials: {numerator:?} vs {denominator:?}")]
    LowestDegreeMismatch { numerator: Vec<u8>, denominator: Vec<u8> },
}
