//! Coassociative coalgebras given by structure constants.
//!
//! `delta` is the `n² x n` matrix of `Δ: C → C ⊗ C` and `eps` the `1 x n`
//! matrix of `ε: C → K`. The unit object is the one-dimensional space and the
//! unitors are identity reindexings, so the counit laws read
//! `kron(eps, I)·delta = I = kron(I, eps)·delta`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Rational, RationalMatrix};
use crate::report::ValidationReport;

pub const COASSOCIATIVITY: &str = "coassociativity";
pub const LEFT_COUNIT: &str = "left counit";
pub const RIGHT_COUNIT: &str = "right counit";
pub const SHAPE: &str = "shape";

#[derive(Debug, Clone)]
pub struct Coalgebra {
    pub name: String,
    pub dim: usize,
    pub delta: RationalMatrix,
    pub eps: RationalMatrix,
}

/// Equality compares structure constants only; the name is a label.
impl PartialEq for Coalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.delta == other.delta && self.eps == other.eps
    }
}

impl Eq for Coalgebra {}

impl Coalgebra {
    /// Assembles a coalgebra without checking the axioms.
    pub fn from_parts(name: impl Into<String>, dim: usize, delta: RationalMatrix, eps: RationalMatrix) -> Self {
        Coalgebra {
            name: name.into(),
            dim,
            delta,
            eps,
        }
    }

    /// Assembles and validates.
    pub fn new(name: impl Into<String>, dim: usize, delta: RationalMatrix, eps: RationalMatrix) -> Result<Arc<Self>> {
        let c = Self::from_parts(name, dim, delta, eps);
        let report = validate_coalgebra(&c);
        if !report.is_valid() {
            return Err(Error::Invalid {
                what: format!("coalgebra `{}`", c.name),
                report,
            });
        }
        Ok(Arc::new(c))
    }

    pub fn shape_ok(&self) -> bool {
        let n = self.dim;
        self.delta.shape() == (n * n, n) && self.eps.shape() == (1, n)
    }
}

pub fn validate_coalgebra(c: &Coalgebra) -> ValidationReport {
    let mut report = ValidationReport::new();
    if !c.shape_ok() {
        report.fail(SHAPE, 0);
        return report;
    }
    report.pass(SHAPE);
    let n = c.dim;
    let id = RationalMatrix::identity(n);

    let lhs = c.delta.kron(&id).mul_unchecked(&c.delta);
    let rhs = id.kron(&c.delta).mul_unchecked(&c.delta);
    report.record(COASSOCIATIVITY, lhs.first_differing_column(&rhs));

    let left = c.eps.kron(&id).mul_unchecked(&c.delta);
    report.record(LEFT_COUNIT, left.first_differing_column(&id));
    let right = id.kron(&c.eps).mul_unchecked(&c.delta);
    report.record(RIGHT_COUNIT, right.first_differing_column(&id));
    report
}

pub fn trivial_coalgebra() -> Arc<Coalgebra> {
    Arc::new(Coalgebra::from_parts(
        "trivial",
        1,
        RationalMatrix::identity(1),
        RationalMatrix::identity(1),
    ))
}

fn require_positive(family: &str, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument(format!("{family}(0) has no basis")));
    }
    Ok(())
}

/// Basis `g_1..g_k` with `Δg = g ⊗ g`, `ε(g) = 1`.
pub fn grouplike_coalgebra(k: usize) -> Result<Arc<Coalgebra>> {
    require_positive("grouplike", k)?;
    let mut delta = RationalMatrix::zeros(k * k, k);
    for i in 0..k {
        delta[(i * k + i, i)] = Rational::one();
    }
    let eps = RationalMatrix::from_vec(1, k, vec![Rational::one(); k])?;
    Ok(Arc::new(Coalgebra::from_parts(
        format!("grouplike({k})"),
        k,
        delta,
        eps,
    )))
}

/// Basis `c_0..c_{k-1}` with `Δc_m = Σ_{i+j=m} c_i ⊗ c_j`, `ε(c_m) = δ_{m,0}`.
pub fn divided_power_coalgebra(k: usize) -> Result<Arc<Coalgebra>> {
    require_positive("divided_power", k)?;
    let mut delta = RationalMatrix::zeros(k * k, k);
    for m in 0..k {
        for i in 0..=m {
            delta[(i * k + (m - i), m)] = Rational::one();
        }
    }
    let mut eps = RationalMatrix::zeros(1, k);
    eps[(0, 0)] = Rational::one();
    Ok(Arc::new(Coalgebra::from_parts(
        format!("divided_power({k})"),
        k,
        delta,
        eps,
    )))
}

/// Matrix coalgebra on `e_ij` (index `i*k + j`): `Δe_ij = Σ_m e_im ⊗ e_mj`, `ε(e_ij) = δ_ij`.
pub fn matrix_coalgebra(k: usize) -> Result<Arc<Coalgebra>> {
    require_positive("matrix", k)?;
    let n = k * k;
    let mut delta = RationalMatrix::zeros(n * n, n);
    let mut eps = RationalMatrix::zeros(1, n);
    for i in 0..k {
        for j in 0..k {
            let col = i * k + j;
            for m in 0..k {
                delta[((i * k + m) * n + (m * k + j), col)] = Rational::one();
            }
        }
        eps[(0, i * k + i)] = Rational::one();
    }
    Ok(Arc::new(Coalgebra::from_parts(format!("matrix({k})"), n, delta, eps)))
}

/// The six coalgebras the verification suites run over.
pub fn standard_corpus() -> Vec<Arc<Coalgebra>> {
    vec![
        trivial_coalgebra(),
        grouplike_coalgebra(2).unwrap(),
        grouplike_coalgebra(3).unwrap(),
        divided_power_coalgebra(2).unwrap(),
        divided_power_coalgebra(3).unwrap(),
        matrix_coalgebra(2).unwrap(),
    ]
}

/// The linear dual `C*` with convolution product `(φψ)(c) = (φ ⊗ ψ)(Δc)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualAlgebra {
    pub dim: usize,
    /// `n x n²`; column `a*n + b` holds the coordinates of `φ_a φ_b`.
    pub mult: RationalMatrix,
    /// `n x 1`; the counit viewed as an element of `C*`.
    pub unit: RationalMatrix,
}

pub const ASSOCIATIVITY: &str = "associativity";
pub const LEFT_UNIT: &str = "left unit";
pub const RIGHT_UNIT: &str = "right unit";

pub fn dual_algebra(c: &Coalgebra) -> DualAlgebra {
    DualAlgebra {
        dim: c.dim,
        mult: c.delta.transpose(),
        unit: c.eps.transpose(),
    }
}

impl DualAlgebra {
    /// Coordinates of `φ_a φ_b`.
    pub fn product(&self, a: usize, b: usize) -> Vec<Rational> {
        self.mult.column(a * self.dim + b)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.dim;
        if self.mult.shape() != (n, n * n) || self.unit.shape() != (n, 1) {
            report.fail(SHAPE, 0);
            return report;
        }
        report.pass(SHAPE);
        let id = RationalMatrix::identity(n);
        let lhs = self.mult.mul_unchecked(&self.mult.kron(&id));
        let rhs = self.mult.mul_unchecked(&id.kron(&self.mult));
        report.record(ASSOCIATIVITY, lhs.first_differing_column(&rhs));
        let left = self.mult.mul_unchecked(&self.unit.kron(&id));
        report.record(LEFT_UNIT, left.first_differing_column(&id));
        let right = self.mult.mul_unchecked(&id.kron(&self.unit));
        report.record(RIGHT_UNIT, right.first_differing_column(&id));
        report
    }
}
