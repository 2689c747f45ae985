//! Fractional supersymmetric oscillators built from k-fermions.
//!
//! The crate implements, over complex double precision:
//!
//! * q-deformed numerics at a primitive k-th root of unity ([`qnum`]),
//! * the k-fermionic ladder algebra and its truncated boson partner
//!   ([`kfermion`]),
//! * the braided Grassmann algebra with generalized derivatives and
//!   Berezin-type integration ([`grassmann`]),
//! * k-fermionic and fractional supercoherent states ([`coherent`]),
//! * the one-parameter interpolation from a quon algebra to the
//!   boson + k-fermion pair ([`quon`]),
//! * the Z_k-graded oscillator with its supercharges, Hamiltonian, and
//!   spectrum ([`fracsusy`]).
//!
//! Every module carries verification routines returning [`report`]
//! structures; the `kfrac` binary exposes them on the command line.

pub mod coherent;
pub mod error;
pub mod fracsusy;
pub mod grassmann;
pub mod kfermion;
pub mod operators;
pub mod qnum;
pub mod quon;
pub mod report;

pub use error::KfracError;
pub use operators::{Basis, Operator, StateVector};
pub use qnum::Deformation;
pub use report::{CheckReport, LimitReport, SpectrumReport};
