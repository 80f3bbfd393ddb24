//! Seeded generators for comodules, morphisms and vectors.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cofree, generated_subcomodule, intertwiner_system, quotient_comodule, ComodMorphism, Comodule};
use crate::coalg::Coalgebra;
use crate::error::Result;
use crate::exactlin::{Rational, RationalMatrix, Subspace};

const ENTRY_RANGE: std::ops::RangeInclusive<i64> = -2..=2;

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| Rational::from(rng.gen_range(ENTRY_RANGE))).collect()
}

/// A random combination of the canonical basis of `s`.
pub fn random_vector_in<R: Rng + ?Sized>(s: &Subspace, rng: &mut R) -> Vec<Rational> {
    let coeffs = random_vector(rng, s.dim());
    s.basis().mul_vec(&coeffs).expect("coefficient count matches dim")
}

/// A subquotient of a cofree comodule of dimension at least `target_dim`.
///
/// Seeds are added one at a time, and each seed enlarges the generated
/// subcomodule by at most `dim C`, so the result stays below
/// `target_dim + 1 + dim C`.
pub fn random_comodule(c: &Arc<Coalgebra>, target_dim: usize, seed: u64) -> Arc<Comodule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = c.dim;
    let goal = target_dim + rng.gen_range(0..=1usize);
    let cf = cofree(c, (target_dim + 2).div_ceil(n));
    let ambient = cf.comodule;
    let mut seeds: Vec<Vec<Rational>> = Vec::new();
    let mut sub = generated_subcomodule(&ambient, &seeds).expect("empty seed list");
    while sub.dim() < goal {
        seeds.push(random_vector(&mut rng, ambient.dim));
        sub = generated_subcomodule(&ambient, &seeds).expect("seeds live in the ambient");
    }
    let v = sub.restricted;
    if v.dim > target_dim && rng.gen_bool(0.5) {
        let inner = generated_subcomodule(&v, &[random_vector(&mut rng, v.dim)]).expect("vector in v");
        if v.dim - inner.dim() >= target_dim {
            return quotient_comodule(&v, &inner)
                .expect("quotient by a generated subcomodule")
                .comodule;
        }
    }
    v
}

/// Basis of the space of comodule maps `src -> dst`.
pub fn hom_space(src: &Comodule, dst: &Comodule) -> Result<Vec<RationalMatrix>> {
    super::ensure_same_coalgebra(src, dst)?;
    Ok(intertwiner_system(src, dst, None).solution_basis())
}

/// A random element of the hom space (possibly zero).
pub fn random_morphism<R: Rng + ?Sized>(
    src: &Arc<Comodule>,
    dst: &Arc<Comodule>,
    rng: &mut R,
) -> Result<ComodMorphism> {
    let basis = hom_space(src, dst)?;
    let mut mat = RationalMatrix::zeros(dst.dim, src.dim);
    for b in &basis {
        let coeff = Rational::from(rng.gen_range(ENTRY_RANGE));
        if !coeff.is_zero() {
            mat = mat.add(&b.scale(&coeff))?;
        }
    }
    Ok(ComodMorphism::from_parts(src.clone(), dst.clone(), mat))
}
