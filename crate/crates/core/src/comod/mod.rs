//! Left comodules over a coalgebra, their morphisms, and constructions that
//! stay inside a single comodule (cofree objects, subcomodules, quotients).
//!
//! A comodule `V` of dimension `m` over `C` of dimension `n` is stored as the
//! `n·m x m` coaction matrix `rho`. Row block `k` (rows `k·m .. (k+1)·m`) is
//! the part of `ρ(v)` sitting on the basis vector `c_k`; several algorithms
//! work block-wise because `kron(I_n, f)·rho` is just `f` applied per block.

mod cofree;
mod dual;
mod random;
mod sub;

use std::sync::Arc;

pub use cofree::{cofree, cofree_factorize, Cofree, CofreeLift};
pub use dual::{from_dual_module, is_dual_homomorphism, to_dual_module, DualModule};
pub use random::{hom_space, random_comodule, random_morphism, random_vector, random_vector_in};
pub use sub::{
    components, generated_subcomodule, generation_trace, quotient_comodule, restrict_coaction, QuotientComodule,
    Subcomodule,
};

use crate::coalg::Coalgebra;
use crate::error::{Error, Result};
use crate::exactlin::{RationalMatrix, SylvesterSystem};
use crate::report::ValidationReport;

pub const COASSOCIATIVITY: &str = "coassociativity";
pub const COUNIT: &str = "counit";
pub const SHAPE: &str = "shape";
pub const SAME_COALGEBRA: &str = "same coalgebra";
pub const INTERTWINES: &str = "intertwines coactions";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comodule {
    pub coalgebra: Arc<Coalgebra>,
    pub dim: usize,
    pub rho: RationalMatrix,
}

impl Comodule {
    pub fn from_parts(coalgebra: Arc<Coalgebra>, dim: usize, rho: RationalMatrix) -> Self {
        Comodule { coalgebra, dim, rho }
    }

    /// Assembles and validates.
    pub fn new(coalgebra: Arc<Coalgebra>, dim: usize, rho: RationalMatrix) -> Result<Arc<Self>> {
        let v = Self::from_parts(coalgebra, dim, rho);
        let report = validate_comodule(&v);
        if !report.is_valid() {
            return Err(Error::Invalid {
                what: "comodule".into(),
                report,
            });
        }
        Ok(Arc::new(v))
    }

    pub fn zero(coalgebra: Arc<Coalgebra>) -> Arc<Self> {
        Arc::new(Self::from_parts(coalgebra, 0, RationalMatrix::zeros(0, 0)))
    }

    /// `C` itself with coaction `Δ`.
    pub fn regular(coalgebra: Arc<Coalgebra>) -> Arc<Self> {
        let n = coalgebra.dim;
        let rho = coalgebra.delta.clone();
        Arc::new(Self::from_parts(coalgebra, n, rho))
    }

    pub fn coalgebra_dim(&self) -> usize {
        self.coalgebra.dim
    }

    /// Row block `k` of the coaction (an `m x m` matrix).
    pub fn block(&self, k: usize) -> RationalMatrix {
        self.rho.row_block(k * self.dim, self.dim)
    }

    pub fn blocks(&self) -> Vec<RationalMatrix> {
        (0..self.coalgebra.dim).map(|k| self.block(k)).collect()
    }

    pub fn same_coalgebra(&self, other: &Comodule) -> bool {
        Arc::ptr_eq(&self.coalgebra, &other.coalgebra) || self.coalgebra == other.coalgebra
    }
}

pub(crate) fn ensure_same_coalgebra(a: &Comodule, b: &Comodule) -> Result<()> {
    if a.same_coalgebra(b) {
        Ok(())
    } else {
        Err(Error::MixedCoalgebras(
            a.coalgebra.name.clone(),
            b.coalgebra.name.clone(),
        ))
    }
}

pub fn validate_comodule(v: &Comodule) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (n, m) = (v.coalgebra.dim, v.dim);
    if v.rho.shape() != (n * m, m) || !v.coalgebra.shape_ok() {
        report.fail(SHAPE, 0);
        return report;
    }
    report.pass(SHAPE);
    let id = RationalMatrix::identity(m);
    let lhs = v.coalgebra.delta.kron(&id).mul_unchecked(&v.rho);
    let rhs = v.rho.kron_identity_left_mul(n, &v.rho).expect("shape checked above");
    report.record(COASSOCIATIVITY, lhs.first_differing_column(&rhs));
    let counit = v.coalgebra.eps.kron(&id).mul_unchecked(&v.rho);
    report.record(COUNIT, counit.first_differing_column(&id));
    report
}

/// A linear map `src -> dst` claimed to intertwine the coactions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComodMorphism {
    pub src: Arc<Comodule>,
    pub dst: Arc<Comodule>,
    pub mat: RationalMatrix,
}

impl ComodMorphism {
    pub fn from_parts(src: Arc<Comodule>, dst: Arc<Comodule>, mat: RationalMatrix) -> Self {
        ComodMorphism { src, dst, mat }
    }

    /// Assembles and validates.
    pub fn new(src: Arc<Comodule>, dst: Arc<Comodule>, mat: RationalMatrix) -> Result<Self> {
        let f = Self::from_parts(src, dst, mat);
        let report = validate_morphism(&f);
        if !report.is_valid() {
            return Err(Error::Invalid {
                what: "comodule morphism".into(),
                report,
            });
        }
        Ok(f)
    }

    pub fn identity(v: Arc<Comodule>) -> Self {
        let mat = RationalMatrix::identity(v.dim);
        Self::from_parts(v.clone(), v, mat)
    }

    pub fn zero(src: Arc<Comodule>, dst: Arc<Comodule>) -> Self {
        let mat = RationalMatrix::zeros(dst.dim, src.dim);
        Self::from_parts(src, dst, mat)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ComodMorphism) -> Result<ComodMorphism> {
        if first.dst.dim != self.src.dim {
            return Err(Error::dims(format!(
                "cannot compose a map out of dimension {} after one into dimension {}",
                self.src.dim, first.dst.dim
            )));
        }
        Ok(Self::from_parts(
            first.src.clone(),
            self.dst.clone(),
            self.mat.mul(&first.mat)?,
        ))
    }

    pub fn sub(&self, other: &ComodMorphism) -> Result<ComodMorphism> {
        Ok(Self::from_parts(
            self.src.clone(),
            self.dst.clone(),
            self.mat.sub(&other.mat)?,
        ))
    }
}

pub fn validate_morphism(f: &ComodMorphism) -> ValidationReport {
    let mut report = ValidationReport::new();
    if !f.src.same_coalgebra(&f.dst) {
        report.fail(SAME_COALGEBRA, 0);
        return report;
    }
    report.pass(SAME_COALGEBRA);
    let n = f.src.coalgebra.dim;
    if f.mat.shape() != (f.dst.dim, f.src.dim)
        || f.src.rho.shape() != (n * f.src.dim, f.src.dim)
        || f.dst.rho.shape() != (n * f.dst.dim, f.dst.dim)
    {
        report.fail(SHAPE, 0);
        return report;
    }
    report.pass(SHAPE);
    let lhs = RationalMatrix::identity(n).kron(&f.mat).mul_unchecked(&f.src.rho);
    let rhs = f.dst.rho.mul_unchecked(&f.mat);
    report.record(INTERTWINES, lhs.first_differing_column(&rhs));
    report
}

/// Linear system for comodule maps `src -> dst` of the form `N·Z`, where `N`
/// (`dst.dim x r`) parametrizes the allowed targets and `Z` is unknown.
/// With `param = None` the unknown is the full map.
pub(crate) fn intertwiner_system(src: &Comodule, dst: &Comodule, param: Option<&RationalMatrix>) -> SylvesterSystem {
    let n = src.coalgebra.dim;
    let id_src = RationalMatrix::identity(src.dim);
    let owned_id;
    let param = match param {
        Some(p) => p,
        None => {
            owned_id = RationalMatrix::identity(dst.dim);
            &owned_id
        }
    };
    let mut sys = SylvesterSystem::new(param.cols(), src.dim);
    for k in 0..n {
        // N Z R_k - S_k N Z = 0
        let r_k = src.block(k);
        let s_k_n = dst.block(k).mul_unchecked(param).neg();
        sys.equation(&[(param, &r_k), (&s_k_n, &id_src)])
            .expect("shapes follow from the comodules");
    }
    sys
}
