//! Executes a parsed session and records a transcript.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use super::ast::*;
use super::json;
use super::lexer::Span;
use crate::coalg::{
    divided_power_coalgebra, grouplike_coalgebra, matrix_coalgebra, trivial_coalgebra, validate_coalgebra, Coalgebra,
};
use crate::colimits::{
    certify_cocone, coequalizer_with, coimage_factorization, colimit_mediating, finite_colimit_with, kernel_sub,
    CoconeResult, CoimageFactorization,
};
use crate::comod::{
    cofree, generated_subcomodule, is_dual_homomorphism, random_comodule, restrict_coaction, to_dual_module,
    validate_comodule, validate_morphism, ComodMorphism, Comodule,
};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exactlin::{rank, RationalMatrix, Subspace};
use crate::limits::{
    certify_cone, comodule_limit_with, maximality_witnesses, mediating_morphism, product_comparison, ConeResult,
};
use crate::report::Certificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Continue after a failing directive.
    pub keep_going: bool,
    /// Run certificates on every construction.
    pub certify: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            keep_going: false,
            certify: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitKind {
    Limit,
    Product,
    Equalizer,
    Pullback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColimitKind {
    Colimit,
    Coproduct,
    Coequalizer,
    Pushout,
    Cokernel,
}

/// A bound name.
#[derive(Debug, Clone)]
pub enum Value {
    Coalgebra(Arc<Coalgebra>),
    Comodule(Arc<Comodule>),
    Morphism {
        map: ComodMorphism,
        src: String,
        dst: String,
    },
    Diagram(Diagram),
    Limit {
        kind: LimitKind,
        cone: Box<ConeResult>,
        certificate: Certificate,
    },
    Colimit {
        kind: ColimitKind,
        cocone: Box<CoconeResult>,
        certificate: Certificate,
    },
    Coimage {
        factorization: Box<CoimageFactorization>,
        morphism: ComodMorphism,
        certificate: Certificate,
    },
}

impl Value {
    /// The comodule a name stands for when used as an object.
    pub fn apex(&self) -> Option<&Arc<Comodule>> {
        match self {
            Value::Comodule(v) => Some(v),
            Value::Limit { cone, .. } => Some(&cone.apex),
            Value::Colimit { cocone, .. } => Some(&cocone.apex),
            Value::Coimage { factorization, .. } => Some(factorization.middle()),
            _ => None,
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Value::Coalgebra(_) => "coalgebra",
            Value::Comodule(_) => "comodule",
            Value::Morphism { .. } => "morphism",
            Value::Diagram(_) => "diagram",
            Value::Limit { .. } => "limit",
            Value::Colimit { .. } => "colimit",
            Value::Coimage { .. } => "coimage",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    CertificateFailed,
    Error,
    Fatal,
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub span: Span,
    pub directive: String,
    pub status: Status,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Transcript {
    pub entries: Vec<Entry>,
}

impl Transcript {
    /// 0 when everything passed, 1 for parse or validation errors, 2 for a
    /// failed certificate, 3 for a fatal correctness failure.
    pub fn exit_code(&self) -> i32 {
        let has = |s: Status| self.entries.iter().any(|e| e.status == s);
        if has(Status::Fatal) {
            3
        } else if has(Status::CertificateFailed) {
            2
        } else if has(Status::Error) {
            1
        } else {
            0
        }
    }

    /// One line per directive; emitted JSON follows its line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let tag = match e.status {
                Status::Ok => "ok",
                Status::CertificateFailed => "certificate failed",
                Status::Error => "error",
                Status::Fatal => "fatal",
            };
            writeln!(out, "{}: {tag}: {}", e.span, e.summary).expect("write to string");
            if let (Some(j), true) = (&e.result, e.directive.starts_with("emit ")) {
                writeln!(out, "{j}").expect("write to string");
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

struct Outcome {
    summary: String,
    result: Option<serde_json::Value>,
    certificate: Option<Certificate>,
}

impl Outcome {
    fn plain(summary: String) -> Self {
        Outcome {
            summary,
            result: None,
            certificate: None,
        }
    }
}

/// Session state: bindings in definition order plus the transcript so far.
pub struct Runner {
    options: RunOptions,
    env: HashMap<String, Value>,
    explicit: Vec<String>,
    transcript: Transcript,
}

pub fn run_session(s: &Session, options: RunOptions) -> Transcript {
    let mut r = Runner::new(options);
    r.run(s);
    r.transcript
}

fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

fn matrix(m: &MatrixLit, rows: usize, cols: usize) -> Result<RationalMatrix> {
    json::matrix(&m.rows, rows, cols)
}

fn count(c: &Count) -> Result<usize> {
    usize::try_from(c.value).map_err(|_| Error::InvalidArgument(format!("{} is too large", c.value)))
}

fn columns(m: &RationalMatrix) -> Vec<Vec<crate::exactlin::Rational>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

impl Runner {
    pub fn new(options: RunOptions) -> Self {
        Runner {
            options,
            env: HashMap::new(),
            explicit: Vec::new(),
            transcript: Transcript::default(),
        }
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }

    /// The session with every coalgebra, comodule and morphism written out in
    /// explicit form; running it reproduces the same values.
    pub fn explicit_session(&self) -> String {
        let mut out = String::new();
        for line in &self.explicit {
            writeln!(out, "{line}").expect("write to string");
        }
        out
    }

    pub fn run(&mut self, s: &Session) {
        for d in &s.directives {
            let outcome = self.execute(d);
            let (status, summary, result) = match outcome {
                Ok(o) => {
                    let failed = o.certificate.as_ref().is_some_and(|c| !c.passed());
                    let status = if failed { Status::CertificateFailed } else { Status::Ok };
                    (status, o.summary, o.result)
                }
                Err(e) => {
                    let status = if e.is_fatal() { Status::Fatal } else { Status::Error };
                    let subject = d.binds().map_or(String::new(), |n| format!(" {}", n.name));
                    (status, format!("{}{subject}: {e}", d.keyword()), None)
                }
            };
            let stop = matches!(status, Status::Error | Status::Fatal) && !self.options.keep_going;
            self.transcript.entries.push(Entry {
                span: d.span,
                directive: d.to_string(),
                status,
                summary,
                result,
            });
            if stop {
                break;
            }
        }
    }

    fn get(&self, id: &Ident) -> Result<&Value> {
        self.env
            .get(&id.name)
            .ok_or_else(|| Error::InvalidArgument(format!("`{}` is not bound", id.name)))
    }

    fn coalgebra(&self, id: &Ident) -> Result<Arc<Coalgebra>> {
        match self.get(id)? {
            Value::Coalgebra(c) => Ok(c.clone()),
            other => Err(Error::InvalidArgument(format!(
                "`{}` is a {}",
                id.name,
                other.kind_name()
            ))),
        }
    }

    fn comodule(&self, id: &Ident) -> Result<Arc<Comodule>> {
        let v = self.get(id)?;
        v.apex()
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("`{}` is a {}", id.name, v.kind_name())))
    }

    fn morphism(&self, id: &Ident) -> Result<ComodMorphism> {
        match self.get(id)? {
            Value::Morphism { map, .. } => Ok(map.clone()),
            other => Err(Error::InvalidArgument(format!(
                "`{}` is a {}",
                id.name,
                other.kind_name()
            ))),
        }
    }

    fn bind(&mut self, name: &Ident, v: Value, explicit: String) {
        self.env.insert(name.name.clone(), v);
        self.explicit.push(explicit);
    }

    fn execute(&mut self, d: &Directive) -> Result<Outcome> {
        match &d.kind {
            DirectiveKind::Coalgebra { name, def } => self.define_coalgebra(name, def),
            DirectiveKind::Comodule { name, def } => self.define_comodule(name, def),
            DirectiveKind::Morphism { name, src, dst, mat } => {
                let (s, t) = (self.comodule(src)?, self.comodule(dst)?);
                let map = ComodMorphism::new(s.clone(), t.clone(), matrix(mat, t.dim, s.dim)?)?;
                let summary = format!(
                    "morphism {} : {} -> {} ({}x{})",
                    name.name, src.name, dst.name, t.dim, s.dim
                );
                self.bind(
                    name,
                    Value::Morphism {
                        map,
                        src: src.name.clone(),
                        dst: dst.name.clone(),
                    },
                    d.to_string(),
                );
                Ok(Outcome::plain(summary))
            }
            DirectiveKind::Diagram { name, objects, arrows } => {
                let diagram = self.build_diagram(objects, arrows)?;
                let summary = format!(
                    "diagram {}: {} objects, {} arrows",
                    name.name,
                    diagram.objects.len(),
                    diagram.arrows.len()
                );
                self.bind(name, Value::Diagram(diagram), d.to_string());
                Ok(Outcome::plain(summary))
            }
            DirectiveKind::Limit { name, def } => self.define_limit(d, name, def),
            DirectiveKind::Colimit { name, def } => self.define_colimit(d, name, def),
            DirectiveKind::Verify(n) => {
                let cert = self.verify(self.get(n)?)?;
                self.explicit.push(d.to_string());
                Ok(Outcome {
                    summary: format!("verify {}: {cert}", n.name),
                    result: Some(to_value(&json::certificate(&cert))),
                    certificate: Some(cert),
                })
            }
            DirectiveKind::Mediate { target, from, legs } => {
                let o = self.mediate(target, from, legs)?;
                self.explicit.push(d.to_string());
                Ok(o)
            }
            DirectiveKind::Emit(n) => {
                let j = self.emit(n)?;
                self.explicit.push(d.to_string());
                Ok(Outcome {
                    summary: format!("emit {}", n.name),
                    result: Some(j),
                    certificate: None,
                })
            }
        }
    }

    fn define_coalgebra(&mut self, name: &Ident, def: &CoalgebraDef) -> Result<Outcome> {
        let base = match def {
            CoalgebraDef::Trivial => trivial_coalgebra(),
            CoalgebraDef::Grouplike(k) => grouplike_coalgebra(count(k)?)?,
            CoalgebraDef::DividedPower(k) => divided_power_coalgebra(count(k)?)?,
            CoalgebraDef::Matrix(k) => matrix_coalgebra(count(k)?)?,
            CoalgebraDef::Explicit { dim, delta, eps } => {
                let n = count(dim)?;
                Coalgebra::new(name.name.clone(), n, matrix(delta, n * n, n)?, matrix(eps, 1, n)?)?
            }
        };
        let c = Arc::new(Coalgebra::from_parts(
            name.name.clone(),
            base.dim,
            base.delta.clone(),
            base.eps.clone(),
        ));
        let explicit = format!(
            "coalgebra {} = explicit {{ dim {}; delta {}; eps {} }}",
            name.name,
            c.dim,
            format_matrix(&c.delta.to_rows()),
            format_matrix(&c.eps.to_rows())
        );
        let summary = format!("coalgebra {}: dim {}", name.name, c.dim);
        self.bind(name, Value::Coalgebra(c), explicit);
        Ok(Outcome::plain(summary))
    }

    fn define_comodule(&mut self, name: &Ident, def: &ComoduleDef) -> Result<Outcome> {
        let v = match def {
            ComoduleDef::Explicit { coalgebra, dim, rho } => {
                let c = self.coalgebra(coalgebra)?;
                let m = count(dim)?;
                Comodule::new(c.clone(), m, matrix(rho, c.dim * m, m)?)?
            }
            ComoduleDef::Cofree { coalgebra, x_dim } => cofree(&self.coalgebra(coalgebra)?, count(x_dim)?).comodule,
            ComoduleDef::Random { coalgebra, dim, seed } => {
                random_comodule(&self.coalgebra(coalgebra)?, count(dim)?, seed.value)
            }
            ComoduleDef::Restrict { comodule, basis } => {
                let m = self.comodule(comodule)?;
                let cols = basis.rows.first().map_or(0, Vec::len);
                let s = Subspace::from_spanning(&matrix(basis, m.dim, cols)?)?;
                restrict_coaction(&m, &s)?.restricted
            }
            ComoduleDef::Generate { comodule, seeds } => {
                let m = self.comodule(comodule)?;
                let cols = seeds.rows.first().map_or(0, Vec::len);
                generated_subcomodule(&m, &columns(&matrix(seeds, m.dim, cols)?))?.restricted
            }
        };
        let explicit = format!(
            "comodule {} over {} {{ dim {}; rho {} }}",
            name.name,
            v.coalgebra.name,
            v.dim,
            format_matrix(&v.rho.to_rows())
        );
        let summary = format!("comodule {}: dim {} over {}", name.name, v.dim, v.coalgebra.name);
        self.bind(name, Value::Comodule(v), explicit);
        Ok(Outcome::plain(summary))
    }

    fn build_diagram(&self, objects: &[Ident], arrows: &[ArrowDecl]) -> Result<Diagram> {
        let first = objects
            .first()
            .ok_or_else(|| Error::InvalidDiagram("a diagram needs at least one object".into()))?;
        let mut d = Diagram::new(self.comodule(first)?.coalgebra.clone());
        for o in objects {
            d.add_object(o.name.clone(), self.comodule(o)?)?;
        }
        for a in arrows {
            let f = self.morphism(&a.morphism)?;
            let (s, t) = (
                d.index_of(&a.src.name).expect("resolved"),
                d.index_of(&a.dst.name).expect("resolved"),
            );
            if *d.object(s) != f.src || *d.object(t) != f.dst {
                return Err(Error::InvalidDiagram(format!(
                    "`{}` does not map {} to {}",
                    a.morphism.name, a.src.name, a.dst.name
                )));
            }
            d.add_arrow(a.morphism.name.clone(), s, t, f.mat.clone())?;
        }
        d.validate()?;
        Ok(d)
    }

    fn define_limit(&mut self, d: &Directive, name: &Ident, def: &LimitDef) -> Result<Outcome> {
        let certify = self.options.certify;
        let (kind, diagram) = match def {
            LimitDef::Limit(n) => match self.get(n)? {
                Value::Diagram(dg) => (LimitKind::Limit, dg.clone()),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "`{}` is a {}",
                        n.name,
                        other.kind_name()
                    )))
                }
            },
            LimitDef::Product(vs) => {
                let objs = vs.iter().map(|v| self.comodule(v)).collect::<Result<Vec<_>>>()?;
                let mut dg = Diagram::new(objs[0].coalgebra.clone());
                for (v, o) in vs.iter().zip(objs) {
                    dg.add_object(v.name.clone(), o)?;
                }
                (LimitKind::Product, dg)
            }
            LimitDef::Equalizer(f, g) => {
                let (f, g) = (self.morphism(f)?, self.morphism(g)?);
                (LimitKind::Equalizer, Diagram::parallel_pair(&f, &g)?)
            }
            LimitDef::Pullback(f, g) => {
                let (f, g) = (self.morphism(f)?, self.morphism(g)?);
                (LimitKind::Pullback, Diagram::cospan(&f, &g)?)
            }
        };
        let cone = comodule_limit_with(&diagram, certify)?;
        let certificate = if certify {
            limit_certificate(&kind, &cone)?
        } else {
            Certificate::new()
        };
        let summary = format!(
            "limit {}: apex dim {}, trace {:?}, {} iterations; certificate: {certificate}",
            name.name, cone.apex.dim, cone.trace, cone.iterations
        );
        let value = Value::Limit {
            kind,
            cone: Box::new(cone),
            certificate: certificate.clone(),
        };
        self.bind(name, value, d.to_string());
        Ok(Outcome {
            summary,
            result: None,
            certificate: Some(certificate),
        })
    }

    fn define_colimit(&mut self, d: &Directive, name: &Ident, def: &ColimitDef) -> Result<Outcome> {
        let certify = self.options.certify;
        if let ColimitDef::Coimage(f) = def {
            let morphism = self.morphism(f)?;
            let factorization = coimage_factorization(&morphism)?;
            let certificate = if certify {
                coimage_certificate(&factorization, &morphism)?
            } else {
                Certificate::new()
            };
            let summary = format!(
                "colimit {}: coimage of dim {}; certificate: {certificate}",
                name.name,
                factorization.middle().dim
            );
            let value = Value::Coimage {
                factorization: Box::new(factorization),
                morphism,
                certificate: certificate.clone(),
            };
            self.bind(name, value, d.to_string());
            return Ok(Outcome {
                summary,
                result: None,
                certificate: Some(certificate),
            });
        }
        let (kind, cocone) = match def {
            ColimitDef::Colimit(n) => match self.get(n)? {
                Value::Diagram(dg) => (ColimitKind::Colimit, finite_colimit_with(dg, certify)?),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "`{}` is a {}",
                        n.name,
                        other.kind_name()
                    )))
                }
            },
            ColimitDef::Coproduct(vs) => {
                let objs = vs.iter().map(|v| self.comodule(v)).collect::<Result<Vec<_>>>()?;
                let mut dg = Diagram::new(objs[0].coalgebra.clone());
                for (v, o) in vs.iter().zip(objs) {
                    dg.add_object(v.name.clone(), o)?;
                }
                (ColimitKind::Coproduct, finite_colimit_with(&dg, certify)?)
            }
            ColimitDef::Coequalizer(f, g) => {
                let (f, g) = (self.morphism(f)?, self.morphism(g)?);
                (ColimitKind::Coequalizer, coequalizer_with(&f, &g, certify)?)
            }
            ColimitDef::Pushout(f, g) => {
                let (f, g) = (self.morphism(f)?, self.morphism(g)?);
                (
                    ColimitKind::Pushout,
                    finite_colimit_with(&Diagram::span(&f, &g)?, certify)?,
                )
            }
            ColimitDef::Cokernel(f) => {
                let f = self.morphism(f)?;
                let zero = ComodMorphism::zero(f.src.clone(), f.dst.clone());
                (ColimitKind::Cokernel, coequalizer_with(&f, &zero, certify)?)
            }
            ColimitDef::Coimage(_) => unreachable!("handled above"),
        };
        let certificate = if certify {
            colimit_certificate(&cocone)
        } else {
            Certificate::new()
        };
        let summary = format!(
            "colimit {}: apex dim {}, uniqueness kernel dim {}; certificate: {certificate}",
            name.name, cocone.apex.dim, cocone.uniqueness_kernel_dim
        );
        let value = Value::Colimit {
            kind,
            cocone: Box::new(cocone),
            certificate: certificate.clone(),
        };
        self.bind(name, value, d.to_string());
        Ok(Outcome {
            summary,
            result: None,
            certificate: Some(certificate),
        })
    }

    /// Re-runs every check for a value from scratch.
    fn verify(&self, v: &Value) -> Result<Certificate> {
        let mut cert = Certificate::new();
        match v {
            Value::Coalgebra(c) => cert.check_report("coalgebra axioms", &validate_coalgebra(c)),
            Value::Comodule(m) => cert.check_report("comodule axioms", &validate_comodule(m)),
            Value::Morphism { map, .. } => cert.check_report("comodule map", &validate_morphism(map)),
            Value::Diagram(d) => cert.check("diagram valid", d.validate().is_ok()),
            Value::Limit { kind, cone, .. } => {
                cert = certify_cone(cone);
                cert.checks.extend(limit_extras(kind, cone)?.checks);
            }
            Value::Colimit { cocone, .. } => cert = colimit_certificate(cocone),
            Value::Coimage {
                factorization,
                morphism,
                ..
            } => cert = coimage_certificate(factorization, morphism)?,
        }
        Ok(cert)
    }

    fn mediate(&self, target: &Ident, from: &Ident, legs: &[Ident]) -> Result<Outcome> {
        let u = self.comodule(from)?;
        let given = legs.iter().map(|l| self.morphism(l)).collect::<Result<Vec<_>>>()?;
        let mut cert = Certificate::new();
        let (map, kernel_dim) = match self.get(target)? {
            Value::Limit { cone, .. } => {
                for g in &given {
                    if g.src != u {
                        return Err(Error::InvalidArgument(format!("legs must start at `{}`", from.name)));
                    }
                }
                let legs = complete_legs(&cone.diagram, &given, Side::Limit)?;
                let m = mediating_morphism(&u, &legs, cone)?;
                if self.options.certify {
                    cert.check_report("map is a comodule map", &validate_morphism(&m.map));
                    let factors = cone
                        .legs
                        .iter()
                        .zip(&legs)
                        .all(|(l, g)| l.mat.mul(&m.map.mat).is_ok_and(|x| x == g.mat));
                    cert.check("legs factor through the map", factors);
                    cert.check("map unique", m.uniqueness_kernel_dim == 0);
                }
                (m.map.mat, m.uniqueness_kernel_dim)
            }
            Value::Colimit { cocone, .. } => {
                for g in &given {
                    if g.dst != u {
                        return Err(Error::InvalidArgument(format!("legs must end at `{}`", from.name)));
                    }
                }
                let legs = complete_legs(&cocone.diagram, &given, Side::Colimit)?;
                let m = colimit_mediating(cocone, &u, &legs)?;
                if self.options.certify {
                    cert.check_report("map is a comodule map", &validate_morphism(&m.map));
                    let factors = cocone
                        .legs
                        .iter()
                        .zip(&legs)
                        .all(|(l, g)| m.map.mat.mul(&l.mat).is_ok_and(|x| x == g.mat));
                    cert.check("legs factor through the map", factors);
                    cert.check("map unique", m.uniqueness_kernel_dim == 0);
                }
                (m.map.mat, m.uniqueness_kernel_dim)
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "`{}` is a {}, not a limit or colimit",
                    target.name,
                    other.kind_name()
                )))
            }
        };
        let summary = format!(
            "mediate {} from {}: map {}x{}, uniqueness kernel dim {kernel_dim}; certificate: {cert}",
            target.name,
            from.name,
            map.rows(),
            map.cols()
        );
        Ok(Outcome {
            summary,
            result: Some(to_value(&json::mediate(
                &target.name,
                &from.name,
                &map,
                kernel_dim,
                &cert,
            ))),
            certificate: Some(cert),
        })
    }

    fn emit(&self, n: &Ident) -> Result<serde_json::Value> {
        Ok(match self.get(n)? {
            Value::Coalgebra(c) => to_value(&json::coalgebra(c)),
            Value::Comodule(v) => to_value(&json::comodule(v)),
            Value::Morphism { map, src, dst } => to_value(&json::morphism(map, src, dst)),
            Value::Diagram(d) => to_value(&json::diagram(d)),
            Value::Limit {
                kind,
                cone,
                certificate,
                ..
            } => to_value(&json::cone(limit_kind_name(kind), cone, certificate)),
            Value::Colimit {
                kind,
                cocone,
                certificate,
            } => to_value(&json::cocone(colimit_kind_name(kind), cocone, certificate)),
            Value::Coimage {
                factorization,
                certificate,
                ..
            } => to_value(&json::coimage(factorization, certificate)),
        })
    }
}

fn limit_kind_name(k: &LimitKind) -> &'static str {
    match k {
        LimitKind::Limit => "limit",
        LimitKind::Product => "product",
        LimitKind::Equalizer => "equalizer",
        LimitKind::Pullback => "pullback",
    }
}

fn colimit_kind_name(k: &ColimitKind) -> &'static str {
    match k {
        ColimitKind::Colimit => "colimit",
        ColimitKind::Coproduct => "coproduct",
        ColimitKind::Coequalizer => "coequalizer",
        ColimitKind::Pushout => "pushout",
        ColimitKind::Cokernel => "cokernel",
    }
}

fn dual_checks(cert: &mut Certificate, apex: &Comodule, legs: &[ComodMorphism]) {
    cert.check_report("apex dual module axioms", &to_dual_module(apex).validate());
    cert.check("legs dual homomorphisms", legs.iter().all(is_dual_homomorphism));
}

/// Checks beyond [`certify_cone`] that depend on how the limit was asked for.
fn limit_extras(kind: &LimitKind, cone: &ConeResult) -> Result<Certificate> {
    let mut cert = Certificate::new();
    dual_checks(&mut cert, &cone.apex, &cone.legs);
    cert.check(
        "maximality witnesses escape W",
        maximality_witnesses(cone, 20, 0)?.holds(),
    );
    match kind {
        LimitKind::Product => {
            let cmp = product_comparison(&cone.diagram.coalgebra, &cone.diagram.comodules())?;
            cert.check("comparison with the direct sum is an isomorphism", cmp.inverse);
        }
        LimitKind::Equalizer => {
            let (f, g) = (&cone.diagram.arrows[0].morphism, &cone.diagram.arrows[1].morphism);
            let kernel = kernel_sub(&f.sub(g)?)?;
            let transported = Subspace::from_spanning(&cone.legs[0].mat)?;
            cert.check("kernel route agrees", transported == kernel.space);
        }
        LimitKind::Limit | LimitKind::Pullback => {}
    }
    Ok(cert)
}

fn limit_certificate(kind: &LimitKind, cone: &ConeResult) -> Result<Certificate> {
    let mut cert = cone.certificate.clone();
    cert.checks.extend(limit_extras(kind, cone)?.checks);
    Ok(cert)
}

fn colimit_certificate(cocone: &CoconeResult) -> Certificate {
    let mut cert = certify_cocone(cocone);
    dual_checks(&mut cert, &cocone.apex, &cocone.legs);
    cert
}

fn coimage_certificate(f: &CoimageFactorization, original: &ComodMorphism) -> Result<Certificate> {
    let mut cert = Certificate::new();
    cert.check("factorization exact", f.k.mat.mul(&f.coim.mat)? == original.mat);
    cert.check("coim surjective", rank(&f.coim.mat) == f.middle().dim);
    cert.check("k injective", rank(&f.k.mat) == f.middle().dim);
    cert.check(
        "factors are comodule maps",
        validate_morphism(&f.coim).is_valid() && validate_morphism(&f.k).is_valid(),
    );
    cert.check_report("middle comodule axioms", &validate_comodule(f.middle()));
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Limit,
    Colimit,
}

/// Matches each given leg to the first free object it fits, then fills the
/// rest by composing along arrows (forward for limits, backward for colimits).
fn complete_legs(d: &Diagram, given: &[ComodMorphism], side: Side) -> Result<Vec<ComodMorphism>> {
    let mut legs: Vec<Option<ComodMorphism>> = vec![None; d.objects.len()];
    for g in given {
        let end = if side == Side::Limit { &g.dst } else { &g.src };
        let slot = (0..legs.len())
            .find(|&i| legs[i].is_none() && d.object(i) == end)
            .ok_or_else(|| Error::InvalidArgument("a leg matches no remaining diagram object".into()))?;
        legs[slot] = Some(g.clone());
    }
    loop {
        let mut progress = false;
        for a in &d.arrows {
            match side {
                Side::Limit => {
                    if legs[a.dst].is_none() {
                        if let Some(l) = &legs[a.src] {
                            legs[a.dst] = Some(a.morphism.compose(l)?);
                            progress = true;
                        }
                    }
                }
                Side::Colimit => {
                    if legs[a.src].is_none() {
                        if let Some(l) = &legs[a.dst] {
                            legs[a.src] = Some(l.compose(&a.morphism)?);
                            progress = true;
                        }
                    }
                }
            }
        }
        if !progress {
            break;
        }
    }
    legs.into_iter()
        .zip(&d.objects)
        .map(|(l, (label, _))| l.ok_or_else(|| Error::InvalidArgument(format!("no leg for object `{label}`"))))
        .collect()
}
