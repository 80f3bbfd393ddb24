//! Finite limits of comodules.
//!
//! Subobject meets and joins and equalizer kernels are plain subspace
//! operations. General limits go through the cofree comodule on the
//! vector-space limit `X`:
//!
//! 1. `X ⊆ ⊕ M_i` is the equalizer subspace, with projections `π_i`.
//! 2. `W ⊆ C ⊗ X` collects the vectors at which `π_i ∘ p` intertwines the
//!    coactions. This is a pointwise condition: on any coinvariant `E ∋ w`
//!    the restricted coaction is the cofree one, so whether `π_i ∘ p ∘ j_E`
//!    is a comodule map at `w` does not depend on `E`.
//! 3. The limit is the largest coinvariant subspace `D ⊆ W`, reached by a
//!    descending iteration. Coinvariant subspaces of `W` are closed under
//!    sums, so this top element is also the union of all of them.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coalg::Coalgebra;
use crate::colimits::kernel_sub;
use crate::comod::{
    cofree, generated_subcomodule, intertwiner_system, random_vector_in, restrict_coaction, validate_comodule,
    validate_morphism, Cofree, ComodMorphism, Comodule, Subcomodule,
};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exactlin::{kernel, nullity, rank, solve_factor, FactorSide, RationalMatrix, Subspace};
use crate::report::Certificate;

fn fatal_restriction(what: &str) -> impl FnOnce(Error) -> Error + '_ {
    move |e| match e {
        Error::NotCoinvariant { .. } => Error::Fatal(format!("{what} is not coinvariant")),
        other => other,
    }
}

fn check_same_ambient(u1: &Subcomodule, u2: &Subcomodule) -> Result<()> {
    if *u1.ambient != *u2.ambient {
        return Err(Error::InvalidArgument(
            "subcomodules live in different comodules".into(),
        ));
    }
    Ok(())
}

/// Meet of two subcomodules: the intersection of their subspaces.
pub fn pullback_monos(u1: &Subcomodule, u2: &Subcomodule) -> Result<Subcomodule> {
    check_same_ambient(u1, u2)?;
    let meet = u1.space.intersect(&u2.space)?;
    restrict_coaction(&u1.ambient, &meet).map_err(fatal_restriction("intersection of subcomodules"))
}

/// Join of two subcomodules: the sum of their subspaces.
pub fn subobject_join(u1: &Subcomodule, u2: &Subcomodule) -> Result<Subcomodule> {
    check_same_ambient(u1, u2)?;
    let join = u1.space.sum(&u2.space)?;
    restrict_coaction(&u1.ambient, &join).map_err(fatal_restriction("sum of subcomodules"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoint {
    pub space: Subspace,
    /// Dimensions of the distinct iterates, strictly decreasing.
    pub trace: Vec<usize>,
    /// Number of shrinking steps attempted, including the one that confirmed stability.
    pub iterations: usize,
}

/// Largest `E ⊆ w` with `ρ(E) ⊆ C ⊗ E`, by `E_{k+1} = {e ∈ E_k : ρ(e) ∈ C ⊗ E_k}`.
pub fn maximal_coinvariant(v: &Comodule, w: &Subspace) -> Result<FixedPoint> {
    if w.ambient_dim() != v.dim {
        return Err(Error::dims(format!(
            "subspace of a dimension-{} space in a dimension-{} comodule",
            w.ambient_dim(),
            v.dim
        )));
    }
    let n = v.coalgebra.dim;
    let mut e = w.clone();
    let mut trace = vec![e.dim()];
    let mut iterations = 0;
    while !e.is_zero() {
        iterations += 1;
        let image = v.rho.mul_unchecked(e.basis());
        let outside = e.annihilator().kron_identity_left_mul(n, &image)?;
        let keep = kernel(&outside);
        if keep.dim() == e.dim() {
            break;
        }
        e = Subspace::from_spanning(&e.basis().mul(keep.basis())?)?;
        trace.push(e.dim());
    }
    Ok(FixedPoint {
        space: e,
        trace,
        iterations,
    })
}

/// [`maximal_coinvariant`] inside the cofree comodule `C ⊗ K^y`.
pub fn maximal_coinvariant_in(c: &Arc<Coalgebra>, y: usize, w: &Subspace) -> Result<FixedPoint> {
    maximal_coinvariant(&cofree(c, y).comodule, w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeResult {
    pub diagram: Diagram,
    /// The vector-space limit `X` inside `⊕ M_i`.
    pub base: Subspace,
    /// `π_i : X -> M_i` in the canonical basis of `base`.
    pub projections: Vec<RationalMatrix>,
    pub cofree: Cofree,
    pub w: Subspace,
    pub d: Subspace,
    pub apex: Arc<Comodule>,
    /// `apex -> C ⊗ X`.
    pub j: ComodMorphism,
    pub legs: Vec<ComodMorphism>,
    pub trace: Vec<usize>,
    pub iterations: usize,
    pub certificate: Certificate,
}

/// `{x ∈ ⊕ M_i : f_a(x_src) = x_dst for every arrow a}`.
fn base_limit(d: &Diagram) -> Result<(Subspace, Vec<RationalMatrix>)> {
    let total = d.total_dim();
    let offsets = d.offsets();
    let id = RationalMatrix::identity(total);
    let select = |i: usize| id.row_block(offsets[i], d.object(i).dim);
    let mut rows = Vec::with_capacity(d.arrows.len());
    for a in &d.arrows {
        rows.push(a.morphism.mat.mul(&select(a.src))?.sub(&select(a.dst))?);
    }
    let base = kernel(&RationalMatrix::vstack_all(total, &rows));
    let projections = (0..d.objects.len())
        .map(|i| base.basis().row_block(offsets[i], d.object(i).dim))
        .collect();
    Ok((base, projections))
}

pub fn comodule_limit(d: &Diagram) -> Result<ConeResult> {
    comodule_limit_with(d, true)
}

pub fn comodule_limit_with(d: &Diagram, certify: bool) -> Result<ConeResult> {
    d.validate()?;
    let c = &d.coalgebra;
    let n = c.dim;
    let (base, projections) = base_limit(d)?;
    let cf = cofree(c, base.dim());
    let nx = cf.comodule.dim;

    let mut conditions = Vec::with_capacity(projections.len());
    for (i, pi) in projections.iter().enumerate() {
        let s = pi.mul(&cf.p)?;
        let lhs = s.kron_identity_left_mul(n, &cf.comodule.rho)?;
        let rhs = d.object(i).rho.mul(&s)?;
        conditions.push(lhs.sub(&rhs)?);
    }
    let w = kernel(&RationalMatrix::vstack_all(nx, &conditions));

    let fp = maximal_coinvariant(&cf.comodule, &w)?;
    let sub = restrict_coaction(&cf.comodule, &fp.space).map_err(fatal_restriction("fixed point"))?;
    let apex = sub.restricted.clone();
    let j = sub.inclusion();
    let pj = cf.p.mul(&j.mat)?;
    let legs = projections
        .iter()
        .enumerate()
        .map(|(i, pi)| {
            Ok(ComodMorphism::from_parts(
                apex.clone(),
                d.object(i).clone(),
                pi.mul(&pj)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut result = ConeResult {
        diagram: d.clone(),
        base,
        projections,
        cofree: cf,
        w,
        d: fp.space,
        apex,
        j,
        legs,
        trace: fp.trace,
        iterations: fp.iterations,
        certificate: Certificate::new(),
    };
    if certify {
        result.certificate = certify_cone(&result);
    }
    Ok(result)
}

/// `a ∘ legs[src] = legs[dst]` for every arrow `a`; the first offending label otherwise.
fn cone_mismatch(d: &Diagram, legs: &[ComodMorphism]) -> Option<String> {
    d.arrows
        .iter()
        .find(|a| {
            a.morphism
                .mat
                .mul(&legs[a.src].mat)
                .map_or(true, |m| m != legs[a.dst].mat)
        })
        .map(|a| a.label.clone())
}

pub fn certify_cone(r: &ConeResult) -> Certificate {
    let mut cert = Certificate::new();
    for check in validate_comodule(&r.apex).checks {
        cert.check(format!("apex {}", check.axiom), check.passed);
    }
    cert.check("embedding is a comodule map", validate_morphism(&r.j).is_valid());
    cert.check("embedding injective", rank(&r.j.mat) == r.apex.dim);
    cert.check(
        "legs are comodule maps",
        r.legs.iter().all(|l| validate_morphism(l).is_valid()),
    );
    cert.check(
        "legs commute with arrows",
        r.legs.len() == r.diagram.objects.len() && cone_mismatch(&r.diagram, &r.legs).is_none(),
    );
    cert.check("fixed point inside W", r.w.contains(&r.d).unwrap_or(false));
    cert.check("trace strictly decreasing", r.trace.windows(2).all(|p| p[0] > p[1]));
    cert.check("iteration count bounded", r.iterations <= r.w.dim() + 1);
    cert.check(
        "p∘j injective",
        r.cofree.p.mul(&r.j.mat).is_ok_and(|pj| rank(&pj) == r.apex.dim),
    );
    cert
}

/// Limit of the discrete diagram.
pub fn product(c: &Arc<Coalgebra>, vs: &[Arc<Comodule>]) -> Result<ConeResult> {
    comodule_limit(&Diagram::discrete(c, vs)?)
}

/// The direct sum presented as a cone over the discrete diagram: the
/// embedding into `C ⊗ (⊕ M_i)` is the coaction itself.
pub fn direct_sum_cone(c: &Arc<Coalgebra>, vs: &[Arc<Comodule>]) -> Result<ConeResult> {
    let d = Diagram::discrete(c, vs)?;
    let sum = crate::colimits::direct_sum(c, vs)?;
    let total = sum.comodule.dim;
    let cf = cofree(c, total);
    let j = ComodMorphism::from_parts(sum.comodule.clone(), cf.comodule.clone(), sum.comodule.rho.clone());
    let image = Subspace::from_spanning(&j.mat)?;
    let mut result = ConeResult {
        diagram: d,
        base: Subspace::full(total),
        projections: sum.projections.iter().map(|p| p.mat.clone()).collect(),
        cofree: cf,
        w: image.clone(),
        trace: vec![image.dim()],
        d: image,
        apex: sum.comodule,
        j,
        legs: sum.projections,
        iterations: 0,
        certificate: Certificate::new(),
    };
    result.certificate = certify_cone(&result);
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MediatingResult {
    pub map: ComodMorphism,
    pub uniqueness_kernel_dim: usize,
    /// `g : U -> X` from the vector-space limit.
    pub base_map: RationalMatrix,
    /// `g̃ = (Id_C ⊗ g) ∘ ρ_U : U -> C ⊗ X`.
    pub lifted: RationalMatrix,
}

/// The unique comodule map `q : U -> apex` with `legs ∘ q = cone_legs`.
///
/// `g̃` is always a comodule map into the cofree comodule whose image is
/// coinvariant and inside `W`, hence inside `D`. Finding it outside `D`
/// contradicts the construction and is reported as [`Error::Fatal`].
pub fn mediating_morphism(u: &Arc<Comodule>, cone_legs: &[ComodMorphism], lim: &ConeResult) -> Result<MediatingResult> {
    let d = &lim.diagram;
    if cone_legs.len() != d.objects.len() {
        return Err(Error::InvalidArgument(format!(
            "{} legs for a diagram with {} objects",
            cone_legs.len(),
            d.objects.len()
        )));
    }
    for (leg, (label, obj)) in cone_legs.iter().zip(&d.objects) {
        if !u.same_coalgebra(obj) {
            return Err(Error::MixedCoalgebras(
                u.coalgebra.name.clone(),
                obj.coalgebra.name.clone(),
            ));
        }
        if leg.mat.shape() != (obj.dim, u.dim) {
            return Err(Error::dims(format!("leg into `{label}` has the wrong shape")));
        }
    }
    if let Some(arrow) = cone_mismatch(d, cone_legs) {
        return Err(Error::ConeMismatch { arrow });
    }
    let n = u.coalgebra.dim;
    let stacked = RationalMatrix::vstack_all(u.dim, &cone_legs.iter().map(|l| l.mat.clone()).collect::<Vec<_>>());
    let g = solve_factor(lim.base.basis(), &stacked, FactorSide::Left)
        .map_err(|_| Error::Fatal("commuting cone does not factor through the base limit".into()))?
        .solution;
    let lifted = g.kron_identity_left_mul(n, &u.rho)?;
    if let Some(col) = lim.d.first_column_outside(&lifted)? {
        return Err(Error::Fatal(format!(
            "lifted cone map leaves the limit subspace at basis vector {col}"
        )));
    }
    let q = solve_factor(&lim.j.mat, &lifted, FactorSide::Left)
        .map_err(|_| Error::Fatal("lifted cone map does not factor through the embedding".into()))?
        .solution;
    let map = ComodMorphism::from_parts(u.clone(), lim.apex.clone(), q);
    for (leg, want) in lim.legs.iter().zip(cone_legs) {
        if leg.mat.mul(&map.mat)? != want.mat {
            return Err(Error::Fatal("mediating map does not reproduce the cone".into()));
        }
    }
    if !validate_morphism(&map).is_valid() {
        return Err(Error::Fatal("mediating map is not a comodule map".into()));
    }
    let legs_stacked = RationalMatrix::vstack_all(
        lim.apex.dim,
        &lim.legs.iter().map(|l| l.mat.clone()).collect::<Vec<_>>(),
    );
    let ker = kernel(&legs_stacked);
    let uniqueness_kernel_dim = if ker.is_zero() {
        0
    } else {
        intertwiner_system(u, &lim.apex, Some(ker.basis())).solution_dim()
    };
    Ok(MediatingResult {
        map,
        uniqueness_kernel_dim,
        base_map: g,
        lifted,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualizerResult {
    pub kernel: Subcomodule,
    pub cone: ConeResult,
    /// Image of the limit apex in the source, via the leg to the source.
    pub transported: Subspace,
    pub routes_agree: bool,
}

/// Equalizer of `f, g`, computed as `ker(f - g)` and as a limit.
pub fn equalizer(f: &ComodMorphism, g: &ComodMorphism) -> Result<EqualizerResult> {
    equalizer_with(f, g, true)
}

pub fn equalizer_with(f: &ComodMorphism, g: &ComodMorphism, certify: bool) -> Result<EqualizerResult> {
    if f.mat.shape() != g.mat.shape() {
        return Err(Error::dims(format!(
            "parallel maps of shapes {:?} and {:?}",
            f.mat.shape(),
            g.mat.shape()
        )));
    }
    let kernel = kernel_sub(&f.sub(g)?)?;
    let cone = comodule_limit_with(&Diagram::parallel_pair(f, g)?, certify)?;
    let transported = Subspace::from_spanning(&cone.legs[0].mat)?;
    let routes_agree = transported == kernel.space && cone.apex.dim == kernel.dim();
    Ok(EqualizerResult {
        kernel,
        cone,
        transported,
        routes_agree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductComparison {
    pub limit: ConeResult,
    pub sum: ConeResult,
    /// `⊕ M_i -> limit apex`.
    pub to_limit: MediatingResult,
    /// `limit apex -> ⊕ M_i`.
    pub to_sum: MediatingResult,
    /// Both composites are identities.
    pub inverse: bool,
}

pub fn product_comparison(c: &Arc<Coalgebra>, vs: &[Arc<Comodule>]) -> Result<ProductComparison> {
    let limit = product(c, vs)?;
    let sum = direct_sum_cone(c, vs)?;
    let to_limit = mediating_morphism(&sum.apex, &sum.legs, &limit)?;
    let to_sum = mediating_morphism(&limit.apex, &limit.legs, &sum)?;
    let inverse =
        to_limit.map.mat.mul(&to_sum.map.mat)?.is_identity() && to_sum.map.mat.mul(&to_limit.map.mat)?.is_identity();
    Ok(ProductComparison {
        limit,
        sum,
        to_limit,
        to_sum,
        inverse,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// `p ∘ j (D)` inside `X`, in the coordinates of `ConeResult::base`.
    pub image: Subspace,
    /// The image with the coaction transported from the apex.
    pub comodule: Arc<Comodule>,
    /// `apex -> image` coordinates.
    pub iso: RationalMatrix,
    pub uniqueness_kernel_dim: usize,
    /// Each `π_i` restricted to the image is a comodule map.
    pub projections_restrict: bool,
}

/// The limit realized inside the vector-space limit `X` along `p ∘ j`.
pub fn rational_realization(lim: &ConeResult) -> Result<Realization> {
    let c = &lim.diagram.coalgebra;
    let n = c.dim;
    let dim = lim.apex.dim;
    let pj = lim.cofree.p.mul(&lim.j.mat)?;
    if rank(&pj) != dim {
        return Err(Error::Fatal("p∘j is not injective".into()));
    }
    let image = Subspace::from_spanning(&pj)?;
    let iso = image
        .coordinates_matrix(&pj)?
        .ok_or_else(|| Error::Fatal("p∘j leaves its own image".into()))?;
    let inv = solve_factor(&iso, &RationalMatrix::identity(dim), FactorSide::Left)?.solution;
    let rho = iso.kron_identity_left_mul(n, &lim.apex.rho.mul(&inv)?)?;
    let comodule = Arc::new(Comodule::from_parts(c.clone(), dim, rho));
    // A coaction making `j ∘ iso⁻¹` a comodule map is determined by it when that map is injective.
    let into_cofree = lim.j.mat.mul(&inv)?;
    let uniqueness_kernel_dim = dim * n * nullity(&into_cofree);
    let projections_restrict = lim.projections.iter().enumerate().all(|(i, pi)| {
        pi.mul(image.basis()).is_ok_and(|m| {
            validate_morphism(&ComodMorphism::from_parts(
                comodule.clone(),
                lim.diagram.object(i).clone(),
                m,
            ))
            .is_valid()
        })
    });
    Ok(Realization {
        image,
        comodule,
        iso,
        uniqueness_kernel_dim,
        projections_restrict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaximalityReport {
    /// Vectors drawn from `W` outside `D`.
    pub checked: usize,
    /// How many of them generate a subcomodule that leaves `W`.
    pub escaped: usize,
}

impl MaximalityReport {
    pub fn holds(&self) -> bool {
        self.checked == self.escaped
    }
}

/// Draws `count` seeded vectors from `W ∖ D` and checks that none of them lies
/// in a coinvariant subspace of `W`. Nothing is drawn when `W = D`.
pub fn maximality_witnesses(lim: &ConeResult, count: usize, seed: u64) -> Result<MaximalityReport> {
    let mut report = MaximalityReport { checked: 0, escaped: 0 };
    if lim.w.dim() == lim.d.dim() {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ambient = &lim.cofree.comodule;
    while report.checked < count {
        let w = random_vector_in(&lim.w, &mut rng);
        if lim.d.contains_vector(&w)? {
            continue;
        }
        report.checked += 1;
        let generated = generated_subcomodule(ambient, &[w])?;
        if !lim.w.contains(&generated.space)? {
            report.escaped += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{divided_power_coalgebra, grouplike_coalgebra, standard_corpus, trivial_coalgebra};
    use crate::comod::{random_comodule, random_morphism, random_vector};
    use crate::exactlin::Rational;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows)
    }

    fn line(c: &Arc<Coalgebra>, k: usize) -> Arc<Comodule> {
        let mut rho = RationalMatrix::zeros(c.dim, 1);
        rho[(k, 0)] = Rational::one();
        Arc::new(Comodule::from_parts(c.clone(), 1, rho))
    }

    fn graded_sum() -> Arc<Comodule> {
        let g = grouplike_coalgebra(2).unwrap();
        crate::colimits::direct_sum(&g, &[line(&g, 0), line(&g, 1)])
            .unwrap()
            .comodule
    }

    #[test]
    fn fixed_point_examples() {
        let d = divided_power_coalgebra(2).unwrap();
        let c1 = Subspace::from_vectors(2, &[vec![Rational::zero(), Rational::one()]]).unwrap();
        let fp = maximal_coinvariant_in(&d, 1, &c1).unwrap();
        assert!(fp.space.is_zero());
        assert_eq!(fp.trace, vec![1, 0]);
        assert_eq!(fp.iterations, 1);

        let full = maximal_coinvariant_in(&d, 2, &Subspace::full(4)).unwrap();
        assert!(full.space.is_full());
        assert_eq!(full.trace, vec![4]);
        let zero = maximal_coinvariant_in(&d, 2, &Subspace::zero(4)).unwrap();
        assert!(zero.space.is_zero());
        assert_eq!(zero.iterations, 0);
    }

    #[test]
    fn fixed_point_is_maximal() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for c in standard_corpus() {
            let cf = cofree(&c, 2).comodule;
            for _ in 0..5 {
                // a coinvariant piece plus noise
                let seed = random_vector(&mut rng, cf.dim);
                let inner = generated_subcomodule(&cf, &[seed]).unwrap();
                let noise = Subspace::from_vectors(cf.dim, &[random_vector(&mut rng, cf.dim)]).unwrap();
                let w = inner.space.sum(&noise).unwrap();
                let fp = maximal_coinvariant(&cf, &w).unwrap();
                assert!(fp.space.contains(&inner.space).unwrap());
                assert!(w.contains(&fp.space).unwrap());
                assert!(restrict_coaction(&cf, &fp.space).is_ok());
                assert!(fp.trace.windows(2).all(|p| p[0] > p[1]));
            }
        }
    }

    #[test]
    fn meet_and_join_examples() {
        let s = graded_sum();
        let e = |i: usize| {
            let mut v = vec![Rational::zero(); 2];
            v[i] = Rational::one();
            restrict_coaction(&s, &Subspace::from_vectors(2, &[v]).unwrap()).unwrap()
        };
        let full = restrict_coaction(&s, &Subspace::full(2)).unwrap();
        assert_eq!(pullback_monos(&full, &e(1)).unwrap(), e(1));
        assert_eq!(pullback_monos(&e(0), &e(1)).unwrap().dim(), 0);
        assert!(subobject_join(&e(0), &e(1)).unwrap().space.is_full());
        let zero = restrict_coaction(&s, &Subspace::zero(2)).unwrap();
        assert_eq!(subobject_join(&zero, &e(0)).unwrap(), e(0));
    }

    #[test]
    fn two_planes_in_cofree_meet_in_a_line() {
        // C ⊗ K for grouplike(3) is graded by the three group-likes
        let g = grouplike_coalgebra(3).unwrap();
        let cf = cofree(&g, 1).comodule;
        let plane = |rows: &[&[i64]]| restrict_coaction(&cf, &Subspace::from_spanning(&m(rows)).unwrap()).unwrap();
        let u1 = plane(&[&[1, 0], &[0, 1], &[0, 0]]);
        let u2 = plane(&[&[0, 0], &[1, 0], &[0, 1]]);
        let meet = pullback_monos(&u1, &u2).unwrap();
        assert_eq!(meet.space.basis(), &m(&[&[0], &[1], &[0]]));
        assert!(validate_comodule(&meet.restricted).is_valid());
        assert!(validate_morphism(&meet.inclusion()).is_valid());
        let rho_meet = cf.rho.mul(meet.space.basis()).unwrap();
        assert!(meet
            .space
            .tensor_left(3)
            .contains(&Subspace::from_spanning(&rho_meet).unwrap())
            .unwrap());
    }

    #[test]
    fn empty_and_discrete_limits() {
        let g = grouplike_coalgebra(2).unwrap();
        let empty = product(&g, &[]).unwrap();
        assert_eq!(empty.apex.dim, 0);
        assert!(empty.certificate.passed(), "{}", empty.certificate);

        let cmp = product_comparison(&g, &[line(&g, 0), line(&g, 1)]).unwrap();
        assert_eq!(cmp.limit.apex.dim, 2);
        assert!(cmp.inverse);
        assert!(cmp.limit.certificate.passed(), "{}", cmp.limit.certificate);
        assert!(cmp.sum.certificate.passed(), "{}", cmp.sum.certificate);

        let single = product_comparison(&g, &[graded_sum()]).unwrap();
        assert!(single.inverse);
    }

    #[test]
    fn product_matches_direct_sum_over_corpus() {
        for (i, c) in standard_corpus().into_iter().enumerate() {
            let a = random_comodule(&c, 2, i as u64);
            let b = random_comodule(&c, 1, 30 + i as u64);
            let cmp = product_comparison(&c, &[a.clone(), b.clone()]).unwrap();
            assert_eq!(cmp.limit.apex.dim, a.dim + b.dim);
            assert!(cmp.inverse);
            assert_eq!(cmp.to_limit.uniqueness_kernel_dim, 0);
            let real = rational_realization(&cmp.limit).unwrap();
            assert!(real.image.is_full());
            assert!(real.projections_restrict);
            assert_eq!(real.uniqueness_kernel_dim, 0);
            assert!(validate_comodule(&real.comodule).is_valid());
        }
    }

    #[test]
    fn equalizer_examples() {
        let s = graded_sum();
        let id = ComodMorphism::identity(s.clone());
        let same = equalizer(&id, &id).unwrap();
        assert!(same.routes_agree);
        assert!(same.kernel.space.is_full());
        let zero = ComodMorphism::zero(s.clone(), s.clone());
        let eq = equalizer(&id, &zero).unwrap();
        assert!(eq.routes_agree);
        assert_eq!(eq.cone.apex.dim, 0);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (i, c) in standard_corpus().into_iter().enumerate() {
            let a = random_comodule(&c, 3, i as u64);
            let b = random_comodule(&c, 2, 7 + i as u64);
            let f = random_morphism(&a, &b, &mut rng).unwrap();
            let g = random_morphism(&a, &b, &mut rng).unwrap();
            let eq = equalizer(&f, &g).unwrap();
            assert!(eq.routes_agree);
            assert_eq!(eq.kernel.dim(), nullity(&f.mat.sub(&g.mat).unwrap()));
            assert!(eq.cone.certificate.passed(), "{}", eq.cone.certificate);
        }
    }

    #[test]
    fn mediating_examples() {
        let c = divided_power_coalgebra(2).unwrap();
        let a = Comodule::regular(c.clone());
        let f = ComodMorphism::identity(a.clone());
        let zero = ComodMorphism::zero(a.clone(), a.clone());
        let lim = comodule_limit(&Diagram::parallel_pair(&f, &zero).unwrap()).unwrap();
        let own = mediating_morphism(&lim.apex, &lim.legs, &lim).unwrap();
        assert!(own.map.mat.is_identity());
        let z = Comodule::zero(c.clone());
        let zero_legs: Vec<_> = lim
            .diagram
            .objects
            .iter()
            .map(|(_, o)| ComodMorphism::zero(z.clone(), o.clone()))
            .collect();
        let from_zero = mediating_morphism(&z, &zero_legs, &lim).unwrap();
        assert_eq!(from_zero.map.mat.shape(), (lim.apex.dim, 0));
    }

    #[test]
    fn mediating_recovers_random_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (i, c) in standard_corpus().into_iter().enumerate() {
            let a = random_comodule(&c, 2, i as u64);
            let b = random_comodule(&c, 2, 20 + i as u64);
            let f = random_morphism(&a, &b, &mut rng).unwrap();
            let g = random_morphism(&a, &b, &mut rng).unwrap();
            let lim = comodule_limit(&Diagram::cospan(&f, &g).unwrap()).unwrap();
            assert!(lim.certificate.passed(), "{}", lim.certificate);
            let u = random_comodule(&c, 2, 40 + i as u64);
            let h = random_morphism(&u, &lim.apex, &mut rng).unwrap();
            let legs: Vec<_> = lim.legs.iter().map(|l| l.compose(&h).unwrap()).collect();
            let med = mediating_morphism(&u, &legs, &lim).unwrap();
            assert_eq!(med.map.mat, h.mat);
            assert_eq!(med.uniqueness_kernel_dim, 0);
        }
    }

    #[test]
    fn non_commuting_cone_is_rejected() {
        let s = graded_sum();
        let id = ComodMorphism::identity(s.clone());
        let zero = ComodMorphism::zero(s.clone(), s.clone());
        let lim = comodule_limit(&Diagram::parallel_pair(&id, &zero).unwrap()).unwrap();
        let legs = vec![id.clone(), id.clone()];
        assert!(matches!(
            mediating_morphism(&s, &legs, &lim),
            Err(Error::ConeMismatch { .. })
        ));
    }

    #[test]
    fn maximality_witnesses_escape() {
        let c = divided_power_coalgebra(3).unwrap();
        let a = Comodule::regular(c.clone());
        let b = random_comodule(&c, 2, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_morphism(&a, &b, &mut rng).unwrap();
        let lim = comodule_limit(&Diagram::span(&f, &ComodMorphism::identity(a.clone())).unwrap()).unwrap();
        let rep = maximality_witnesses(&lim, 20, 9).unwrap();
        assert!(rep.holds());
        if lim.w.dim() > lim.d.dim() {
            assert_eq!(rep.checked, 20);
        }
    }

    #[test]
    fn trivial_coalgebra_limits_are_vector_space_limits() {
        let t = trivial_coalgebra();
        let a = Arc::new(Comodule::from_parts(t.clone(), 3, RationalMatrix::identity(3)));
        let f = ComodMorphism::from_parts(a.clone(), a.clone(), m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]));
        let id = ComodMorphism::identity(a.clone());
        let eq = equalizer(&f, &id).unwrap();
        assert_eq!(eq.cone.apex.dim, 2);
        assert!(eq.routes_agree);
    }
}
