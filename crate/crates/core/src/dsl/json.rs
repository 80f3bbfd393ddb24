//! JSON forms of bound values and results. Rationals are `"p/q"` strings,
//! matrices are row-major arrays, and keys come out in declaration order.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coalg::Coalgebra;
use crate::colimits::{CoconeResult, CoimageFactorization};
use crate::comod::{ComodMorphism, Comodule};
use crate::diagram::Diagram;
use crate::error::Result;
use crate::exactlin::{Rational, RationalMatrix};
use crate::limits::ConeResult;
use crate::report::Certificate;

pub type Rows = Vec<Vec<Rational>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoalgebraJson {
    pub name: String,
    pub dim: usize,
    pub delta: Rows,
    pub eps: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComoduleJson {
    pub coalgebra: String,
    pub dim: usize,
    pub rho: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub src: String,
    pub dst: String,
    pub mat: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub label: String,
    pub src: String,
    pub dst: String,
    pub mat: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub coalgebra: String,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegJson {
    pub object: String,
    pub mat: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeJson {
    pub kind: String,
    pub apex: ComoduleJson,
    pub j: Rows,
    pub p: Rows,
    pub trace: Vec<usize>,
    pub iterations: usize,
    pub legs: Vec<LegJson>,
    pub certificate: CertificateJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoconeJson {
    pub kind: String,
    pub apex: ComoduleJson,
    pub relations: Rows,
    pub uniqueness_kernel_dim: usize,
    pub legs: Vec<LegJson>,
    pub certificate: CertificateJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoimageJson {
    pub kind: String,
    pub middle: ComoduleJson,
    pub coim: Rows,
    pub k: Rows,
    pub certificate: CertificateJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MediateJson {
    pub target: String,
    pub from: String,
    pub map: Rows,
    pub uniqueness_kernel_dim: usize,
    pub certificate: CertificateJson,
}

pub fn rows(m: &RationalMatrix) -> Rows {
    m.to_rows()
}

/// Builds a `rows × cols` matrix; the column count matters when there are no rows.
pub fn matrix(rows: &Rows, expected_rows: usize, cols: usize) -> Result<RationalMatrix> {
    if rows.len() != expected_rows {
        return Err(crate::Error::dims(format!(
            "expected {expected_rows} rows, found {}",
            rows.len()
        )));
    }
    RationalMatrix::from_rows(rows.clone(), cols)
}

pub fn certificate(c: &Certificate) -> CertificateJson {
    CertificateJson {
        passed: c.passed(),
        checks: c
            .checks
            .iter()
            .map(|k| CheckJson {
                name: k.name.clone(),
                passed: k.passed,
            })
            .collect(),
    }
}

pub fn coalgebra(c: &Coalgebra) -> CoalgebraJson {
    CoalgebraJson {
        name: c.name.clone(),
        dim: c.dim,
        delta: rows(&c.delta),
        eps: rows(&c.eps),
    }
}

pub fn comodule(v: &Comodule) -> ComoduleJson {
    ComoduleJson {
        coalgebra: v.coalgebra.name.clone(),
        dim: v.dim,
        rho: rows(&v.rho),
    }
}

pub fn morphism(f: &ComodMorphism, src: &str, dst: &str) -> MorphismJson {
    MorphismJson {
        src: src.into(),
        dst: dst.into(),
        mat: rows(&f.mat),
    }
}

pub fn diagram(d: &Diagram) -> DiagramJson {
    DiagramJson {
        coalgebra: d.coalgebra.name.clone(),
        objects: d.objects.iter().map(|(l, _)| l.clone()).collect(),
        arrows: d
            .arrows
            .iter()
            .map(|a| ArrowJson {
                label: a.label.clone(),
                src: d.objects[a.src].0.clone(),
                dst: d.objects[a.dst].0.clone(),
                mat: rows(&a.morphism.mat),
            })
            .collect(),
    }
}

fn legs(d: &Diagram, legs: &[ComodMorphism]) -> Vec<LegJson> {
    d.objects
        .iter()
        .zip(legs)
        .map(|((label, _), leg)| LegJson {
            object: label.clone(),
            mat: rows(&leg.mat),
        })
        .collect()
}

pub fn cone(kind: &str, r: &ConeResult, cert: &Certificate) -> ConeJson {
    ConeJson {
        kind: kind.into(),
        apex: comodule(&r.apex),
        j: rows(&r.j.mat),
        p: rows(&r.cofree.p),
        trace: r.trace.clone(),
        iterations: r.iterations,
        legs: legs(&r.diagram, &r.legs),
        certificate: certificate(cert),
    }
}

pub fn cocone(kind: &str, r: &CoconeResult, cert: &Certificate) -> CoconeJson {
    CoconeJson {
        kind: kind.into(),
        apex: comodule(&r.apex),
        relations: rows(r.relations.basis()),
        uniqueness_kernel_dim: r.uniqueness_kernel_dim,
        legs: legs(&r.diagram, &r.legs),
        certificate: certificate(cert),
    }
}

pub fn coimage(f: &CoimageFactorization, cert: &Certificate) -> CoimageJson {
    CoimageJson {
        kind: "coimage".into(),
        middle: comodule(f.middle()),
        coim: rows(&f.coim.mat),
        k: rows(&f.k.mat),
        certificate: certificate(cert),
    }
}

pub fn mediate(target: &str, from: &str, map: &RationalMatrix, kernel_dim: usize, cert: &Certificate) -> MediateJson {
    MediateJson {
        target: target.into(),
        from: from.into(),
        map: rows(map),
        uniqueness_kernel_dim: kernel_dim,
        certificate: certificate(cert),
    }
}

/// Rebuilds and validates a coalgebra from its JSON form.
pub fn parse_coalgebra(j: &CoalgebraJson) -> Result<Arc<Coalgebra>> {
    let n = j.dim;
    Coalgebra::new(j.name.clone(), n, matrix(&j.delta, n * n, n)?, matrix(&j.eps, 1, n)?)
}

/// Rebuilds and validates a comodule over `c`.
pub fn parse_comodule(j: &ComoduleJson, c: &Arc<Coalgebra>) -> Result<Arc<Comodule>> {
    Comodule::new(c.clone(), j.dim, matrix(&j.rho, c.dim * j.dim, j.dim)?)
}

/// Rebuilds and validates a morphism between known comodules.
pub fn parse_morphism(j: &MorphismJson, src: &Arc<Comodule>, dst: &Arc<Comodule>) -> Result<ComodMorphism> {
    ComodMorphism::new(src.clone(), dst.clone(), matrix(&j.mat, dst.dim, src.dim)?)
}
