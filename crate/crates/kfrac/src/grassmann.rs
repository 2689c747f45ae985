//! Braided nilpotent (generalized Grassmann) algebra with ordered generators,
//! q-derivatives, and top-coefficient integration.
//!
//! Generators are kept in a fixed normal order, unbarred before barred and
//! primed after unprimed. For an unbarred/barred pair the product relation is
//! `theta thetabar = q^{1/2} thetabar theta`; like pairs commute. Every
//! generator is nilpotent of order `k`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::KfracError;
use crate::operators::{Basis, Operator};
use crate::qnum::{qnumber, Deformation};
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Unbarred,
    Barred,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: &'static str,
    pub kind: GeneratorKind,
}

/// A Grassmann algebra of braided nilpotent generators.
#[derive(Clone, Debug)]
pub struct GrassmannAlgebra {
    deformation: Deformation,
    generators: Vec<Generator>,
    /// `braiding[i][j]` for `i < j` is the factor `beta` in
    /// `g_j g_i = beta g_i g_j`.
    braiding: Vec<Vec<C64>>,
}

impl GrassmannAlgebra {
    fn build(deformation: Deformation, generators: Vec<Generator>) -> Arc<Self> {
        let n = generators.len();
        let mut braiding = vec![vec![C64::new(1.0, 0.0); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let cross = generators[i].kind != generators[j].kind;
                // theta thetabar = q^{1/2} thetabar theta, so pulling a barred
                // generator left past an unbarred one costs q^{-1/2}.
                braiding[i][j] = if cross { deformation.q_half_inv() } else { C64::new(1.0, 0.0) };
            }
        }
        Arc::new(Self { deformation, generators, braiding })
    }

    /// Two generators `theta < thetabar`.
    pub fn pair(k: usize) -> Result<Arc<Self>, KfracError> {
        let d = Deformation::new(k)?;
        Ok(Self::build(
            d,
            vec![
                Generator { name: "theta", kind: GeneratorKind::Unbarred },
                Generator { name: "thetabar", kind: GeneratorKind::Barred },
            ],
        ))
    }

    /// Four generators `theta < theta' < thetabar < thetabar'`.
    pub fn quad(k: usize) -> Result<Arc<Self>, KfracError> {
        let d = Deformation::new(k)?;
        Ok(Self::build(
            d,
            vec![
                Generator { name: "theta", kind: GeneratorKind::Unbarred },
                Generator { name: "theta'", kind: GeneratorKind::Unbarred },
                Generator { name: "thetabar", kind: GeneratorKind::Barred },
                Generator { name: "thetabar'", kind: GeneratorKind::Barred },
            ],
        ))
    }

    pub fn order(&self) -> usize {
        self.deformation.k
    }

    pub fn deformation(&self) -> Deformation {
        self.deformation
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_kind(&self, index: usize) -> GeneratorKind {
        self.generators[index].kind
    }
}

fn same_algebra(a: &Arc<GrassmannAlgebra>, b: &Arc<GrassmannAlgebra>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.deformation.k == b.deformation.k
            && a.generators.len() == b.generators.len()
            && a.generators
                .iter()
                .zip(&b.generators)
                .all(|(x, y)| x.kind == y.kind))
}

/// An element of a [`GrassmannAlgebra`]: complex coefficients over
/// normal-ordered monomials, keyed by exponent tuples.
#[derive(Clone, Debug)]
pub struct GrassmannElement {
    algebra: Arc<GrassmannAlgebra>,
    terms: BTreeMap<Vec<u8>, C64>,
}

impl GrassmannElement {
    pub fn zero(algebra: &Arc<GrassmannAlgebra>) -> Self {
        Self { algebra: Arc::clone(algebra), terms: BTreeMap::new() }
    }

    pub fn scalar(algebra: &Arc<GrassmannAlgebra>, c: C64) -> Self {
        let mut e = Self::zero(algebra);
        if c.norm_sqr() != 0.0 {
            e.terms.insert(vec![0; algebra.generator_count()], c);
        }
        e
    }

    pub fn one(algebra: &Arc<GrassmannAlgebra>) -> Self {
        Self::scalar(algebra, C64::new(1.0, 0.0))
    }

    /// The generator with the given index, as an element.
    pub fn generator(algebra: &Arc<GrassmannAlgebra>, index: usize) -> Result<Self, KfracError> {
        let count = algebra.generator_count();
        if index >= count {
            return Err(KfracError::NoSuchGenerator { index, count });
        }
        let mut exps = vec![0u8; count];
        exps[index] = 1;
        let mut e = Self::zero(algebra);
        e.terms.insert(exps, C64::new(1.0, 0.0));
        Ok(e)
    }

    pub fn algebra(&self) -> &Arc<GrassmannAlgebra> {
        &self.algebra
    }

    pub fn coefficient(&self, exps: &[u8]) -> C64 {
        self.terms.get(exps).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &C64)> {
        self.terms.iter()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() < tol
    }

    fn insert(&mut self, exps: Vec<u8>, c: C64) {
        if c.norm_sqr() == 0.0 {
            return;
        }
        *self.terms.entry(exps).or_insert(C64::new(0.0, 0.0)) += c;
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, KfracError> {
        if !same_algebra(&self.algebra, &rhs.algebra) {
            return Err(KfracError::AlgebraMismatch);
        }
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, KfracError> {
        self.add(&rhs.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (e, x) in &self.terms {
            out.insert(e.clone(), x * c);
        }
        out
    }

    /// Braided product. Monomials are concatenated and brought back to normal
    /// order; each swap of a later generator past an earlier one contributes
    /// the braiding factor, and any exponent reaching `k` kills the term.
    pub fn mul(&self, rhs: &Self) -> Result<Self, KfracError> {
        if !same_algebra(&self.algebra, &rhs.algebra) {
            return Err(KfracError::AlgebraMismatch);
        }
        let alg = &self.algebra;
        let k = alg.order() as u8;
        let ngen = alg.generator_count();
        let mut out = Self::zero(alg);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                // Normal ordering of (g^ea)(g^eb): each g_i from the right
                // factor passes every g_j (j > i) of the left factor.
                let mut factor = ca * cb;
                let mut dead = false;
                let mut exps = vec![0u8; ngen];
                for i in 0..ngen {
                    let total = ea[i] + eb[i];
                    if total >= k {
                        dead = true;
                        break;
                    }
                    exps[i] = total;
                    for j in i + 1..ngen {
                        let swaps = (ea[j] as u32) * (eb[i] as u32);
                        if swaps > 0 {
                            factor *= alg.braiding[i][j].powu(swaps);
                        }
                    }
                }
                if !dead {
                    out.insert(exps, factor);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: usize) -> Result<Self, KfracError> {
        let mut out = Self::one(&self.algebra);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// q-derivative with respect to generator `var`.
    ///
    /// On a normal-ordered monomial the derivative removes one power of `var`,
    /// multiplies by the q-integer of its exponent (base `q` for unbarred
    /// variables, `qbar` for barred ones), and picks up the braiding passage
    /// factor for every generator standing left of `var`. For the two-variable
    /// algebra this is `theta^a thetabar^b -> q^{-a/2} [b]_qbar theta^a
    /// thetabar^{b-1}`.
    pub fn qderiv(&self, var: usize) -> Result<Self, KfracError> {
        let alg = &self.algebra;
        let count = alg.generator_count();
        if var >= count {
            return Err(KfracError::NoSuchGenerator { index: var, count });
        }
        let p = match alg.generator_kind(var) {
            GeneratorKind::Unbarred => alg.deformation.q,
            GeneratorKind::Barred => alg.deformation.qbar,
        };
        let mut out = Self::zero(alg);
        for (exps, c) in &self.terms {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut factor = c * qnumber(e as f64, p)?;
            for u in 0..var {
                if exps[u] > 0 {
                    factor *= alg.braiding[u][var].powu(exps[u] as u32);
                }
            }
            let mut new_exps = exps.clone();
            new_exps[var] = e - 1;
            out.insert(new_exps, factor);
        }
        Ok(out)
    }

    /// Extract the coefficient of `var^{k-1}`; every other power of `var`
    /// integrates to zero. No extra braiding factor is applied.
    pub fn integrate(&self, var: usize) -> Result<Self, KfracError> {
        let alg = &self.algebra;
        let count = alg.generator_count();
        if var >= count {
            return Err(KfracError::NoSuchGenerator { index: var, count });
        }
        let top = (alg.order() - 1) as u8;
        let mut out = Self::zero(alg);
        for (exps, c) in &self.terms {
            if exps[var] == top {
                let mut new_exps = exps.clone();
                new_exps[var] = 0;
                out.insert(new_exps, *c);
            }
        }
        Ok(out)
    }

    /// Truncated p-deformed exponential `sum_{n<terms} X^n/[n]_p!` under the
    /// braided product. Powers beyond nilpotency vanish silently.
    pub fn qexp(&self, p: C64, terms: usize) -> Result<Self, KfracError> {
        if terms < 1 {
            return Err(KfracError::InvalidTermCount { terms });
        }
        let mut acc = Self::one(&self.algebra);
        let mut pow = Self::one(&self.algebra);
        let mut fac = C64::new(1.0, 0.0);
        for n in 1..terms {
            pow = pow.mul(self)?;
            fac *= qnumber(n as f64, p)?;
            acc = acc.add(&pow.scale(1.0 / fac))?;
        }
        Ok(acc)
    }
}

/// Matrix of a linear map on the full algebra, in the monomial basis listed in
/// lexicographic exponent order.
fn map_matrix(
    algebra: &Arc<GrassmannAlgebra>,
    f: impl Fn(&GrassmannElement) -> Result<GrassmannElement, KfracError>,
) -> Result<Operator, KfracError> {
    let k = algebra.order();
    let ngen = algebra.generator_count();
    let dim = k.pow(ngen as u32);
    let monomials: Vec<Vec<u8>> = (0..dim)
        .map(|mut idx| {
            let mut exps = vec![0u8; ngen];
            for g in (0..ngen).rev() {
                exps[g] = (idx % k) as u8;
                idx /= k;
            }
            exps
        })
        .collect();
    let basis = Basis::Fermion { k: dim };
    let mut m = Operator::zeros(basis);
    for (j, exps) in monomials.iter().enumerate() {
        let mut e = GrassmannElement::zero(algebra);
        e.insert(exps.clone(), C64::new(1.0, 0.0));
        let image = f(&e)?;
        for (i, target) in monomials.iter().enumerate() {
            m[(i, j)] = image.coefficient(target);
        }
    }
    Ok(m)
}

/// Verify the Grassmann realization of the k-fermionic generators on the
/// two-variable algebra: left multiplication by `theta` and `thetabar`
/// together with the two q-derivatives, as matrices on the k^2-dimensional
/// algebra.
///
/// The barred deformed commutator is the one relation whose defining domain
/// is the functions of `thetabar` alone, so its residual is taken over the
/// `thetabar`-subalgebra columns; every other identity is checked on the full
/// k^2 space.
pub fn verify_realization(k: usize, tol: f64) -> Result<CheckReport, KfracError> {
    let alg = GrassmannAlgebra::pair(k)?;
    let d = alg.deformation();
    let theta = GrassmannElement::generator(&alg, 0)?;
    let thetabar = GrassmannElement::generator(&alg, 1)?;

    let l_theta = map_matrix(&alg, |x| theta.mul(x))?;
    let l_thetabar = map_matrix(&alg, |x| thetabar.mul(x))?;
    let d_theta = map_matrix(&alg, |x| x.qderiv(0))?;
    let d_thetabar = map_matrix(&alg, |x| x.qderiv(1))?;
    let one = Operator::identity(l_theta.basis());

    let mut report = CheckReport::new(format!("grassmann-realization k={k}"));

    report.residual(
        "d_theta theta - q theta d_theta = 1",
        d_theta.q_commutator(&l_theta, d.q)?.sub(&one)?.max_abs(),
        tol,
    );

    // Columns indexed by pure thetabar monomials (theta-degree zero); both
    // operators preserve that block.
    let barred = d_thetabar.q_commutator(&l_thetabar, d.qbar)?.sub(&one)?;
    let mut barred_residual = 0.0f64;
    for j in 0..k {
        for i in 0..k * k {
            barred_residual = barred_residual.max(barred[(i, j)].norm());
        }
    }
    report.residual("d_thetabar thetabar - qbar thetabar d_thetabar = 1", barred_residual, tol);

    report.residual("theta^k = 0", l_theta.power(k).max_abs(), tol);
    report.residual("thetabar^k = 0", l_thetabar.power(k).max_abs(), tol);
    report.residual("(d_theta)^k = 0", d_theta.power(k).max_abs(), tol);
    report.residual("(d_thetabar)^k = 0", d_thetabar.power(k).max_abs(), tol);

    report.residual(
        "d_theta d_thetabar - q^{-1/2} d_thetabar d_theta = 0",
        d_theta.q_commutator(&d_thetabar, d.q_half_inv())?.max_abs(),
        tol,
    );
    report.residual(
        "theta thetabar - q^{+1/2} thetabar theta = 0",
        l_theta.q_commutator(&l_thetabar, d.q_half())?.max_abs(),
        tol,
    );

    Ok(report)
}
