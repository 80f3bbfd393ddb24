//! Coproducts, coequalizers and general finite colimits of comodules.
//!
//! Every colimit is a quotient of a carrier comodule (the direct sum of the
//! objects, or the target of a parallel pair) by the subcomodule generated by
//! the relations. The induced coaction comes out of [`quotient_comodule`],
//! whose uniqueness kernel is reported with the result.

use std::sync::Arc;

use crate::coalg::Coalgebra;
use crate::comod::{
    generated_subcomodule, quotient_comodule, restrict_coaction, validate_comodule, validate_morphism, ComodMorphism,
    Comodule, QuotientComodule, Subcomodule,
};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exactlin::{kernel, rank, solve_factor, FactorSide, RationalMatrix, Subspace};
use crate::report::Certificate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSum {
    pub comodule: Arc<Comodule>,
    pub injections: Vec<ComodMorphism>,
    pub projections: Vec<ComodMorphism>,
}

/// `⊕ vs`; coaction block `k` is the block diagonal of the summands' blocks.
pub fn direct_sum(c: &Arc<Coalgebra>, vs: &[Arc<Comodule>]) -> Result<DirectSum> {
    for v in vs {
        if *v.coalgebra != **c {
            return Err(Error::MixedCoalgebras(c.name.clone(), v.coalgebra.name.clone()));
        }
    }
    let total: usize = vs.iter().map(|v| v.dim).sum();
    let blocks: Vec<RationalMatrix> = (0..c.dim)
        .map(|k| {
            let parts: Vec<RationalMatrix> = vs.iter().map(|v| v.block(k)).collect();
            RationalMatrix::block_diag(&parts)
        })
        .collect();
    let rho = RationalMatrix::vstack_all(total, &blocks);
    let sum = Arc::new(Comodule::from_parts(c.clone(), total, rho));
    let id = RationalMatrix::identity(total);
    let mut injections = Vec::with_capacity(vs.len());
    let mut projections = Vec::with_capacity(vs.len());
    let mut offset = 0;
    for v in vs {
        let inj = id.col_block(offset, v.dim);
        projections.push(ComodMorphism::from_parts(sum.clone(), v.clone(), inj.transpose()));
        injections.push(ComodMorphism::from_parts(v.clone(), sum.clone(), inj));
        offset += v.dim;
    }
    Ok(DirectSum {
        comodule: sum,
        injections,
        projections,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoconeResult {
    pub diagram: Diagram,
    pub apex: Arc<Comodule>,
    /// One leg per diagram object.
    pub legs: Vec<ComodMorphism>,
    /// The comodule that was divided out and the subcomodule it was divided by.
    pub carrier: Arc<Comodule>,
    pub relations: Subspace,
    /// Dimension of the solution space for the apex coaction; 0 means unique.
    pub uniqueness_kernel_dim: usize,
    pub certificate: Certificate,
}

fn cocone_from_relations(
    diagram: Diagram,
    carrier: Arc<Comodule>,
    relations: &RationalMatrix,
    into_carrier: &[RationalMatrix],
    certify: bool,
) -> Result<CoconeResult> {
    let span = Subspace::from_spanning(relations)?;
    let seeds: Vec<_> = (0..span.dim()).map(|j| span.basis().column(j)).collect();
    let sub = generated_subcomodule(&carrier, &seeds)?;
    let QuotientComodule {
        comodule: apex,
        projection,
        uniqueness_kernel_dim,
        ..
    } = quotient_comodule(&carrier, &sub)?;
    let legs = diagram
        .objects
        .iter()
        .zip(into_carrier)
        .map(|((_, v), m)| {
            Ok(ComodMorphism::from_parts(
                v.clone(),
                apex.clone(),
                projection.mat.mul(m)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut result = CoconeResult {
        diagram,
        apex,
        legs,
        carrier,
        relations: sub.space.clone(),
        uniqueness_kernel_dim,
        certificate: Certificate::new(),
    };
    if certify {
        result.certificate = certify_cocone(&result);
        result
            .certificate
            .check("relations already coinvariant", sub.dim() == span.dim());
    }
    Ok(result)
}

/// Re-runs every check on a cocone: apex axioms, legs are comodule maps,
/// legs commute with the arrows, and the apex coaction is unique.
pub fn certify_cocone(r: &CoconeResult) -> Certificate {
    let mut cert = Certificate::new();
    for check in validate_comodule(&r.apex).checks {
        cert.check(format!("apex {}", check.axiom), check.passed);
    }
    cert.check(
        "legs are comodule maps",
        r.legs.iter().all(|l| validate_morphism(l).is_valid()),
    );
    cert.check("legs commute with arrows", cocone_commutes(&r.diagram, &r.legs));
    cert.check("induced coaction unique", r.uniqueness_kernel_dim == 0);
    cert
}

/// `legs[dst] ∘ a = legs[src]` for every arrow `a`.
pub fn cocone_commutes(d: &Diagram, legs: &[ComodMorphism]) -> bool {
    legs.len() == d.objects.len()
        && d.arrows
            .iter()
            .all(|a| legs[a.dst].mat.mul(&a.morphism.mat).is_ok_and(|m| m == legs[a.src].mat))
}

/// The colimit as the coequalizer of `⊕_arrows src ⇉ ⊕_objects`.
pub fn finite_colimit(d: &Diagram) -> Result<CoconeResult> {
    finite_colimit_with(d, true)
}

pub fn finite_colimit_with(d: &Diagram, certify: bool) -> Result<CoconeResult> {
    d.validate()?;
    let sum = direct_sum(&d.coalgebra, &d.comodules())?;
    let total = sum.comodule.dim;
    let into: Vec<RationalMatrix> = sum.injections.iter().map(|i| i.mat.clone()).collect();
    let mut rel_blocks = Vec::with_capacity(d.arrows.len());
    for a in &d.arrows {
        rel_blocks.push(into[a.dst].mul(&a.morphism.mat)?.sub(&into[a.src])?);
    }
    let relations = RationalMatrix::hstack_all(total, &rel_blocks);
    cocone_from_relations(d.clone(), sum.comodule, &relations, &into, certify)
}

pub fn coproduct(c: &Arc<Coalgebra>, vs: &[Arc<Comodule>]) -> Result<CoconeResult> {
    finite_colimit(&Diagram::discrete(c, vs)?)
}

/// Quotient of the common target by the subcomodule generated by `im(f - g)`.
/// Legs are `q∘f` on the source and `q` on the target.
pub fn coequalizer(f: &ComodMorphism, g: &ComodMorphism) -> Result<CoconeResult> {
    coequalizer_with(f, g, true)
}

pub fn coequalizer_with(f: &ComodMorphism, g: &ComodMorphism, certify: bool) -> Result<CoconeResult> {
    if f.mat.shape() != g.mat.shape() {
        return Err(Error::dims(format!(
            "parallel maps of shapes {:?} and {:?}",
            f.mat.shape(),
            g.mat.shape()
        )));
    }
    let d = Diagram::parallel_pair(f, g)?;
    d.validate()?;
    let relations = f.mat.sub(&g.mat)?;
    let into = [f.mat.clone(), RationalMatrix::identity(f.dst.dim)];
    cocone_from_relations(d, f.dst.clone(), &relations, &into, certify)
}

/// Colimit of `B <- A -> C`.
pub fn pushout(f: &ComodMorphism, g: &ComodMorphism) -> Result<CoconeResult> {
    finite_colimit(&Diagram::span(f, g)?)
}

pub fn cokernel(f: &ComodMorphism) -> Result<CoconeResult> {
    coequalizer(f, &ComodMorphism::zero(f.src.clone(), f.dst.clone()))
}

/// The kernel of `f` with its restricted coaction. Kernels of comodule maps
/// are always coinvariant over a field, so a failed restriction is fatal.
pub fn kernel_sub(f: &ComodMorphism) -> Result<Subcomodule> {
    check_morphism(f)?;
    restrict_coaction(&f.src, &kernel(&f.mat)).map_err(|e| match e {
        Error::NotCoinvariant { .. } => Error::Fatal("kernel of a comodule map is not coinvariant".into()),
        other => other,
    })
}

fn check_morphism(f: &ComodMorphism) -> Result<()> {
    let report = validate_morphism(f);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Invalid {
            what: "comodule morphism".into(),
            report,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoimageFactorization {
    pub kernel: Subcomodule,
    /// `src -> src / ker f`, surjective.
    pub coim: ComodMorphism,
    /// `src / ker f -> dst`, injective.
    pub k: ComodMorphism,
}

impl CoimageFactorization {
    pub fn middle(&self) -> &Arc<Comodule> {
        &self.coim.dst
    }
}

/// `f = k ∘ coim(f)` through the quotient by the kernel.
pub fn coimage_factorization(f: &ComodMorphism) -> Result<CoimageFactorization> {
    let ker = kernel_sub(f)?;
    let q = quotient_comodule(&f.src, &ker)?;
    // f vanishes on the kernel, so it factors through the section.
    let k_mat = f.mat.mul(&q.data.section)?;
    let k = ComodMorphism::from_parts(q.comodule.clone(), f.dst.clone(), k_mat);
    if k.mat.mul(&q.projection.mat)? != f.mat {
        return Err(Error::Fatal("coimage factorization does not recover f".into()));
    }
    let mid = q.comodule.dim;
    if rank(&q.projection.mat) != mid || rank(&k.mat) != mid {
        return Err(Error::Fatal("coimage factors have the wrong rank".into()));
    }
    Ok(CoimageFactorization {
        kernel: ker,
        coim: q.projection,
        k,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitMediating {
    pub map: ComodMorphism,
    pub uniqueness_kernel_dim: usize,
}

/// The unique `u : apex -> target` with `u ∘ legs[i] = target_legs[i]`.
pub fn colimit_mediating(
    colim: &CoconeResult,
    target: &Arc<Comodule>,
    target_legs: &[ComodMorphism],
) -> Result<ColimitMediating> {
    if target_legs.len() != colim.legs.len() {
        return Err(Error::InvalidArgument(format!(
            "{} legs for a diagram with {} objects",
            target_legs.len(),
            colim.legs.len()
        )));
    }
    for (leg, (_, obj)) in target_legs.iter().zip(&colim.diagram.objects) {
        if leg.mat.shape() != (target.dim, obj.dim) {
            return Err(Error::dims("cocone leg does not fit its object".to_string()));
        }
    }
    if let Some(a) = colim
        .diagram
        .arrows
        .iter()
        .find(|a| target_legs[a.dst].mat.mul_unchecked(&a.morphism.mat) != target_legs[a.src].mat)
    {
        return Err(Error::ConeMismatch { arrow: a.label.clone() });
    }
    let cover = RationalMatrix::hstack_all(
        colim.apex.dim,
        &colim.legs.iter().map(|l| l.mat.clone()).collect::<Vec<_>>(),
    );
    let wanted = RationalMatrix::hstack_all(
        target.dim,
        &target_legs.iter().map(|l| l.mat.clone()).collect::<Vec<_>>(),
    );
    let sol = solve_factor(&cover, &wanted, FactorSide::Right)
        .map_err(|_| Error::Fatal("commuting cocone does not factor through the colimit".into()))?;
    let map = ComodMorphism::from_parts(colim.apex.clone(), target.clone(), sol.solution);
    if !validate_morphism(&map).is_valid() {
        return Err(Error::Fatal(
            "mediating map out of the colimit is not a comodule map".into(),
        ));
    }
    Ok(ColimitMediating {
        map,
        uniqueness_kernel_dim: sol.kernel_dim,
    })
}
