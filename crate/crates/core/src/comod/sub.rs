use std::sync::Arc;

use super::{ComodMorphism, Comodule};
use crate::coalg::Coalgebra;
use crate::error::{Error, Result};
use crate::exactlin::{nullity, QuotientData, Rational, RationalMatrix, Subspace};

/// A coinvariant subspace together with its induced coaction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcomodule {
    pub ambient: Arc<Comodule>,
    pub space: Subspace,
    /// Coaction in the coordinates of `space`'s canonical basis.
    pub restricted: Arc<Comodule>,
}

impl Subcomodule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The inclusion `restricted -> ambient` (the canonical basis matrix).
    pub fn inclusion(&self) -> ComodMorphism {
        ComodMorphism::from_parts(
            self.restricted.clone(),
            self.ambient.clone(),
            self.space.basis().clone(),
        )
    }
}

/// Smallest `U ⊆ Y` with `w ∈ C ⊗ U`: the row span of `w` reshaped to `n x dim Y`.
pub fn components(c: &Coalgebra, w: &[Rational]) -> Result<Subspace> {
    let n = c.dim;
    if n == 0 || !w.len().is_multiple_of(n) {
        return Err(Error::dims(format!(
            "vector of length {} is not in C ⊗ Y for dim C = {n}",
            w.len()
        )));
    }
    let y = w.len() / n;
    let reshaped = RationalMatrix::from_vec(n, y, w.to_vec())?;
    Subspace::from_spanning(&reshaped.transpose())
}

/// Dimensions of the ascending chain `U_0 ⊆ U_1 ⊆ ...` that builds the
/// subcomodule generated by `seeds`, ending at the first repeated value.
pub fn generation_trace(v: &Comodule, seeds: &[Vec<Rational>]) -> Result<(Subspace, Vec<usize>)> {
    let mut u = Subspace::from_vectors(v.dim, seeds)?;
    let blocks = v.blocks();
    let mut trace = vec![u.dim()];
    loop {
        // components of ρ(u) over all basis vectors u are the columns of the blocks applied to U
        let images: Vec<RationalMatrix> = blocks.iter().map(|b| b.mul_unchecked(u.basis())).collect();
        let spanning = RationalMatrix::hstack_all(v.dim, &images);
        let next = u.sum(&Subspace::from_spanning(&spanning)?)?;
        trace.push(next.dim());
        if next.dim() == u.dim() {
            return Ok((u, trace));
        }
        u = next;
    }
}

/// The least coinvariant subspace containing `seeds`.
pub fn generated_subcomodule(v: &Arc<Comodule>, seeds: &[Vec<Rational>]) -> Result<Subcomodule> {
    let (space, _) = generation_trace(v, seeds)?;
    restrict_coaction(v, &space)
}

/// Restricts the coaction of `v` to `s`, or reports a basis vector of `s`
/// whose coaction leaves `C ⊗ s`.
pub fn restrict_coaction(v: &Arc<Comodule>, s: &Subspace) -> Result<Subcomodule> {
    if s.ambient_dim() != v.dim {
        return Err(Error::dims(format!(
            "subspace of a dimension-{} space inside a dimension-{} comodule",
            s.ambient_dim(),
            v.dim
        )));
    }
    let n = v.coalgebra.dim;
    let mut coords = Vec::with_capacity(n);
    for k in 0..n {
        let image = v.block(k).mul_unchecked(s.basis());
        match s.coordinates_matrix(&image)? {
            Some(x) => coords.push(x),
            None => {
                let j = s
                    .first_column_outside(&image)?
                    .expect("coordinates failed, so some column is outside");
                return Err(Error::NotCoinvariant {
                    witness: s.basis().column(j),
                });
            }
        }
    }
    let rho = RationalMatrix::vstack_all(s.dim(), &coords);
    Ok(Subcomodule {
        ambient: v.clone(),
        space: s.clone(),
        restricted: Arc::new(Comodule::from_parts(v.coalgebra.clone(), s.dim(), rho)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientComodule {
    pub comodule: Arc<Comodule>,
    pub projection: ComodMorphism,
    pub data: QuotientData,
    /// Dimension of `{R : R·proj = 0}`; 0 certifies that the induced coaction is unique.
    pub uniqueness_kernel_dim: usize,
}

/// `v / s` with the unique coaction making the projection a comodule map.
///
/// The coaction solves `kron(I_n, proj)·ρ_v = ρ_q·proj` by right-division
/// along the section of the projection.
pub fn quotient_comodule(v: &Arc<Comodule>, s: &Subcomodule) -> Result<QuotientComodule> {
    if *s.ambient != **v {
        return Err(Error::InvalidArgument(
            "subcomodule does not live in the given comodule".into(),
        ));
    }
    let n = v.coalgebra.dim;
    let data = QuotientData::new(v.dim, &s.space)?;
    let pushed = data.projection.kron_identity_left_mul(n, &v.rho)?;
    let rho_q = pushed.mul(&data.section)?;
    if rho_q.mul(&data.projection)? != pushed {
        return Err(Error::Fatal(
            "induced quotient coaction does not factor through the projection".into(),
        ));
    }
    let q_dim = data.quotient_dim();
    let comodule = Arc::new(Comodule::from_parts(v.coalgebra.clone(), q_dim, rho_q));
    let uniqueness_kernel_dim = n * q_dim * nullity(&data.projection.transpose());
    Ok(QuotientComodule {
        projection: ComodMorphism::from_parts(v.clone(), comodule.clone(), data.projection.clone()),
        comodule,
        data,
        uniqueness_kernel_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{divided_power_coalgebra, grouplike_coalgebra, trivial_coalgebra};
    use crate::comod::{validate_comodule, validate_morphism};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn components_examples() {
        let c = grouplike_coalgebra(2).unwrap();
        // c_1 ⊗ y with y = (1, 2, 0)
        let w = vec![q(0), q(0), q(0), q(1), q(2), q(0)];
        let u = components(&c, &w).unwrap();
        assert_eq!(u, Subspace::from_vectors(3, &[vec![q(1), q(2), q(0)]]).unwrap());
        assert_eq!(components(&c, &vec![q(0); 6]).unwrap(), Subspace::zero(3));
        let w = vec![q(1), q(0), q(0), q(0), q(1), q(0)];
        assert_eq!(components(&c, &w).unwrap().dim(), 2);
        assert!(components(&c, &vec![q(1); 3]).is_err());
    }

    #[test]
    fn generated_examples() {
        let t = trivial_coalgebra();
        let v = Arc::new(Comodule::from_parts(t, 3, RationalMatrix::identity(3)));
        assert_eq!(generated_subcomodule(&v, &[]).unwrap().dim(), 0);
        let e1 = vec![q(1), q(0), q(0)];
        let s = generated_subcomodule(&v, std::slice::from_ref(&e1)).unwrap();
        assert_eq!(s.space, Subspace::from_vectors(3, &[e1]).unwrap());

        let d = divided_power_coalgebra(2).unwrap();
        let reg = Comodule::regular(d);
        let s = generated_subcomodule(&reg, &[vec![q(0), q(1)]]).unwrap();
        assert!(s.space.is_full());
        let (_, trace) = generation_trace(&reg, &[vec![q(0), q(1)]]).unwrap();
        assert_eq!(trace, vec![1, 2, 2]);
    }

    #[test]
    fn restriction_examples() {
        let d = divided_power_coalgebra(2).unwrap();
        let reg = Comodule::regular(d);
        let full = restrict_coaction(&reg, &Subspace::full(2)).unwrap();
        assert_eq!(*full.restricted, *reg);
        let zero = restrict_coaction(&reg, &Subspace::zero(2)).unwrap();
        assert_eq!(zero.restricted.dim, 0);
        assert!(validate_comodule(&zero.restricted).is_valid());

        let c1 = Subspace::from_vectors(2, &[vec![q(0), q(1)]]).unwrap();
        match restrict_coaction(&reg, &c1) {
            Err(Error::NotCoinvariant { witness }) => assert_eq!(witness, vec![q(0), q(1)]),
            other => panic!("expected NotCoinvariant, got {other:?}"),
        }
        // span(c_0) is coinvariant: Δc_0 = c_0 ⊗ c_0
        let c0 = Subspace::from_vectors(2, &[vec![q(1), q(0)]]).unwrap();
        let sub = restrict_coaction(&reg, &c0).unwrap();
        assert!(validate_comodule(&sub.restricted).is_valid());
        assert!(validate_morphism(&sub.inclusion()).is_valid());
    }

    #[test]
    fn quotient_examples() {
        let d = divided_power_coalgebra(3).unwrap();
        let reg = Comodule::regular(d);
        let zero = restrict_coaction(&reg, &Subspace::zero(3)).unwrap();
        let qz = quotient_comodule(&reg, &zero).unwrap();
        assert_eq!(*qz.comodule, *reg);
        assert!(qz.projection.mat.is_identity());

        let full = restrict_coaction(&reg, &Subspace::full(3)).unwrap();
        let qf = quotient_comodule(&reg, &full).unwrap();
        assert_eq!(qf.comodule.dim, 0);

        let g = grouplike_coalgebra(2).unwrap();
        // line(c_0) ⊕ line(c_1)
        let rho = RationalMatrix::from_i64_rows(&[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]);
        let sum = Comodule::new(g, 2, rho).unwrap();
        let g1 = restrict_coaction(&sum, &Subspace::from_vectors(2, &[vec![q(1), q(0)]]).unwrap()).unwrap();
        let quot = quotient_comodule(&sum, &g1).unwrap();
        assert_eq!(quot.comodule.rho, RationalMatrix::from_i64_rows(&[&[0], &[1]]));
        assert!(validate_morphism(&quot.projection).is_valid());
        assert_eq!(quot.uniqueness_kernel_dim, 0);
    }

    #[test]
    fn quotient_rejects_foreign_subcomodule() {
        let d = divided_power_coalgebra(2).unwrap();
        let reg = Comodule::regular(d);
        let other = Comodule::regular(divided_power_coalgebra(3).unwrap());
        let s = restrict_coaction(&other, &Subspace::zero(3)).unwrap();
        assert!(quotient_comodule(&reg, &s).is_err());
    }
}
