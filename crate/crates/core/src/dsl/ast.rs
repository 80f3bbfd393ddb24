//! Session syntax tree and its canonical printer.

use std::fmt::{self, Write};

use super::lexer::Span;
use crate::exactlin::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Count {
    pub value: u64,
    pub span: Span,
}

/// Row-major literal; the column count of an empty literal comes from context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixLit {
    pub rows: Vec<Vec<Rational>>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoalgebraDef {
    Trivial,
    Grouplike(Count),
    DividedPower(Count),
    Matrix(Count),
    Explicit {
        dim: Count,
        delta: MatrixLit,
        eps: MatrixLit,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComoduleDef {
    Explicit {
        coalgebra: Ident,
        dim: Count,
        rho: MatrixLit,
    },
    Cofree {
        coalgebra: Ident,
        x_dim: Count,
    },
    Random {
        coalgebra: Ident,
        dim: Count,
        seed: Count,
    },
    /// Subcomodule spanned by the columns of the literal.
    Restrict {
        comodule: Ident,
        basis: MatrixLit,
    },
    /// Subcomodule generated by the columns of the literal.
    Generate {
        comodule: Ident,
        seeds: MatrixLit,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub morphism: Ident,
    pub src: Ident,
    pub dst: Ident,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitDef {
    Limit(Ident),
    Product(Vec<Ident>),
    Equalizer(Ident, Ident),
    Pullback(Ident, Ident),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColimitDef {
    Colimit(Ident),
    Coproduct(Vec<Ident>),
    Coequalizer(Ident, Ident),
    Pushout(Ident, Ident),
    Cokernel(Ident),
    Coimage(Ident),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectiveKind {
    Coalgebra {
        name: Ident,
        def: CoalgebraDef,
    },
    Comodule {
        name: Ident,
        def: ComoduleDef,
    },
    Morphism {
        name: Ident,
        src: Ident,
        dst: Ident,
        mat: MatrixLit,
    },
    Diagram {
        name: Ident,
        objects: Vec<Ident>,
        arrows: Vec<ArrowDecl>,
    },
    Limit {
        name: Ident,
        def: LimitDef,
    },
    Colimit {
        name: Ident,
        def: ColimitDef,
    },
    Verify(Ident),
    Mediate {
        target: Ident,
        from: Ident,
        legs: Vec<Ident>,
    },
    Emit(Ident),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Directive {
    pub span: Span,
    pub kind: DirectiveKind,
}

impl Directive {
    /// The name this directive binds, if any.
    pub fn binds(&self) -> Option<&Ident> {
        match &self.kind {
            DirectiveKind::Coalgebra { name, .. }
            | DirectiveKind::Comodule { name, .. }
            | DirectiveKind::Morphism { name, .. }
            | DirectiveKind::Diagram { name, .. }
            | DirectiveKind::Limit { name, .. }
            | DirectiveKind::Colimit { name, .. } => Some(name),
            _ => None,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match &self.kind {
            DirectiveKind::Coalgebra { .. } => "coalgebra",
            DirectiveKind::Comodule { .. } => "comodule",
            DirectiveKind::Morphism { .. } => "morphism",
            DirectiveKind::Diagram { .. } => "diagram",
            DirectiveKind::Limit { .. } => "limit",
            DirectiveKind::Colimit { .. } => "colimit",
            DirectiveKind::Verify(_) => "verify",
            DirectiveKind::Mediate { .. } => "mediate",
            DirectiveKind::Emit(_) => "emit",
        }
    }

    /// Names read by this directive, in source order.
    pub fn references(&self) -> Vec<&Ident> {
        match &self.kind {
            DirectiveKind::Coalgebra { .. } => vec![],
            DirectiveKind::Comodule { def, .. } => match def {
                ComoduleDef::Explicit { coalgebra, .. }
                | ComoduleDef::Cofree { coalgebra, .. }
                | ComoduleDef::Random { coalgebra, .. } => vec![coalgebra],
                ComoduleDef::Restrict { comodule, .. } | ComoduleDef::Generate { comodule, .. } => vec![comodule],
            },
            DirectiveKind::Morphism { src, dst, .. } => vec![src, dst],
            DirectiveKind::Diagram { objects, arrows, .. } => {
                objects.iter().chain(arrows.iter().map(|a| &a.morphism)).collect()
            }
            DirectiveKind::Limit { def, .. } => match def {
                LimitDef::Limit(d) => vec![d],
                LimitDef::Product(vs) => vs.iter().collect(),
                LimitDef::Equalizer(f, g) | LimitDef::Pullback(f, g) => vec![f, g],
            },
            DirectiveKind::Colimit { def, .. } => match def {
                ColimitDef::Colimit(d) | ColimitDef::Cokernel(d) | ColimitDef::Coimage(d) => vec![d],
                ColimitDef::Coproduct(vs) => vs.iter().collect(),
                ColimitDef::Coequalizer(f, g) | ColimitDef::Pushout(f, g) => vec![f, g],
            },
            DirectiveKind::Verify(n) | DirectiveKind::Emit(n) => vec![n],
            DirectiveKind::Mediate { target, from, legs } => {
                let mut v = vec![target, from];
                v.extend(legs);
                v
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Session {
    pub directives: Vec<Directive>,
}

pub fn format_matrix(rows: &[Vec<Rational>]) -> String {
    let mut s = String::from("[");
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push('[');
        for (j, x) in row.iter().enumerate() {
            if j > 0 {
                s.push_str(", ");
            }
            write!(s, "{x}").expect("write to string");
        }
        s.push(']');
    }
    s.push(']');
    s
}

fn names(vs: &[Ident]) -> String {
    vs.iter().map(|v| v.name.as_str()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DirectiveKind::Coalgebra { name, def } => {
                write!(f, "coalgebra {} = ", name.name)?;
                match def {
                    CoalgebraDef::Trivial => write!(f, "trivial"),
                    CoalgebraDef::Grouplike(k) => write!(f, "grouplike({})", k.value),
                    CoalgebraDef::DividedPower(k) => write!(f, "divided_power({})", k.value),
                    CoalgebraDef::Matrix(k) => write!(f, "matrix({})", k.value),
                    CoalgebraDef::Explicit { dim, delta, eps } => write!(
                        f,
                        "explicit {{ dim {}; delta {}; eps {} }}",
                        dim.value,
                        format_matrix(&delta.rows),
                        format_matrix(&eps.rows)
                    ),
                }
            }
            DirectiveKind::Comodule { name, def } => match def {
                ComoduleDef::Explicit { coalgebra, dim, rho } => write!(
                    f,
                    "comodule {} over {} {{ dim {}; rho {} }}",
                    name.name,
                    coalgebra.name,
                    dim.value,
                    format_matrix(&rho.rows)
                ),
                ComoduleDef::Cofree { coalgebra, x_dim } => {
                    write!(
                        f,
                        "comodule {} = cofree({}, {})",
                        name.name, coalgebra.name, x_dim.value
                    )
                }
                ComoduleDef::Random { coalgebra, dim, seed } => write!(
                    f,
                    "comodule {} = random({}, {}, {})",
                    name.name, coalgebra.name, dim.value, seed.value
                ),
                ComoduleDef::Restrict { comodule, basis } => write!(
                    f,
                    "comodule {} = restrict({}, {})",
                    name.name,
                    comodule.name,
                    format_matrix(&basis.rows)
                ),
                ComoduleDef::Generate { comodule, seeds } => write!(
                    f,
                    "comodule {} = generate({}, {})",
                    name.name,
                    comodule.name,
                    format_matrix(&seeds.rows)
                ),
            },
            DirectiveKind::Morphism { name, src, dst, mat } => write!(
                f,
                "morphism {} : {} -> {} = {}",
                name.name,
                src.name,
                dst.name,
                format_matrix(&mat.rows)
            ),
            DirectiveKind::Diagram { name, objects, arrows } => {
                write!(f, "diagram {} {{ objects {}", name.name, names(objects))?;
                for a in arrows {
                    write!(f, "; arrow {} : {} -> {}", a.morphism.name, a.src.name, a.dst.name)?;
                }
                write!(f, " }}")
            }
            DirectiveKind::Limit { name, def } => {
                write!(f, "limit {} = ", name.name)?;
                match def {
                    LimitDef::Limit(d) => write!(f, "limit({})", d.name),
                    LimitDef::Product(vs) => write!(f, "product({})", names(vs)),
                    LimitDef::Equalizer(a, b) => write!(f, "equalizer({}, {})", a.name, b.name),
                    LimitDef::Pullback(a, b) => write!(f, "pullback({}, {})", a.name, b.name),
                }
            }
            DirectiveKind::Colimit { name, def } => {
                write!(f, "colimit {} = ", name.name)?;
                match def {
                    ColimitDef::Colimit(d) => write!(f, "colimit({})", d.name),
                    ColimitDef::Coproduct(vs) => write!(f, "coproduct({})", names(vs)),
                    ColimitDef::Coequalizer(a, b) => write!(f, "coequalizer({}, {})", a.name, b.name),
                    ColimitDef::Pushout(a, b) => write!(f, "pushout({}, {})", a.name, b.name),
                    ColimitDef::Cokernel(a) => write!(f, "cokernel({})", a.name),
                    ColimitDef::Coimage(a) => write!(f, "coimage({})", a.name),
                }
            }
            DirectiveKind::Verify(n) => write!(f, "verify {}", n.name),
            DirectiveKind::Mediate { target, from, legs } => {
                write!(f, "mediate {} from ({}; legs {})", target.name, from.name, names(legs))
            }
            DirectiveKind::Emit(n) => write!(f, "emit {}", n.name),
        }
    }
}

/// Canonical source: one directive per line, no comments.
pub fn print_session(s: &Session) -> String {
    let mut out = String::new();
    for d in &s.directives {
        writeln!(out, "{d}").expect("write to string");
    }
    out
}
