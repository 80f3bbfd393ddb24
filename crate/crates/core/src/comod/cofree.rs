use std::sync::Arc;

use super::{intertwiner_system, ComodMorphism, Comodule};
use crate::coalg::Coalgebra;
use crate::error::{Error, Result};
use crate::exactlin::{kernel, RationalMatrix};

/// `C ⊗ X` with coaction `Δ ⊗ Id_X` and the counit projection `p = ε ⊗ Id_X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cofree {
    pub comodule: Arc<Comodule>,
    /// `x_dim x (n·x_dim)`.
    pub p: RationalMatrix,
    pub x_dim: usize,
}

pub fn cofree(c: &Arc<Coalgebra>, x_dim: usize) -> Cofree {
    let id = RationalMatrix::identity(x_dim);
    let rho = c.delta.kron(&id);
    let p = c.eps.kron(&id);
    Cofree {
        comodule: Arc::new(Comodule::from_parts(c.clone(), c.dim * x_dim, rho)),
        p,
        x_dim,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofreeLift {
    pub morphism: ComodMorphism,
    /// Dimension of `{h : V → C⊗X comodule map, p·h = 0}`; 0 certifies uniqueness.
    pub uniqueness_kernel_dim: usize,
}

/// The unique comodule map `f' = (Id_C ⊗ f)∘ρ_V` into the cofree comodule with `p∘f' = f`.
pub fn cofree_factorize(v: &Arc<Comodule>, f: &RationalMatrix, cf: &Cofree) -> Result<CofreeLift> {
    if f.shape() != (cf.x_dim, v.dim) {
        return Err(Error::dims(format!(
            "lift of a {}x{} map from a dimension-{} comodule into C ⊗ K^{}",
            f.rows(),
            f.cols(),
            v.dim,
            cf.x_dim
        )));
    }
    super::ensure_same_coalgebra(v, &cf.comodule)?;
    let n = v.coalgebra.dim;
    let lifted = f.kron_identity_left_mul(n, &v.rho)?;
    // Comodule maps h with p·h = 0 are h = N·Z for N spanning ker p.
    let ker_p = kernel(&cf.p);
    let sys = intertwiner_system(v, &cf.comodule, Some(ker_p.basis()));
    Ok(CofreeLift {
        morphism: ComodMorphism::from_parts(v.clone(), cf.comodule.clone(), lifted),
        uniqueness_kernel_dim: sys.solution_dim(),
    })
}
