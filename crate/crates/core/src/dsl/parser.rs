//! Recursive-descent parser for session files.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::ast::*;
use super::lexer::{tokenize, Span, Tok, Token};
use crate::exactlin::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax {
        expected: Vec<String>,
        found: String,
    },
    UnclosedBracket {
        found: String,
    },
    Lex(String),
    BadNumber(String),
    DuplicateName(String),
    UnknownName(String),
    NotAnObject {
        name: String,
        diagram: String,
    },
    WrongKind {
        name: String,
        expected: String,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn expected(&self) -> &[String] {
        match &self.kind {
            ParseErrorKind::Syntax { expected, .. } => expected,
            _ => &[],
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.span)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::UnclosedBracket { found } => {
                write!(f, "unclosed `[` (reached {found})")
            }
            ParseErrorKind::Lex(m) => write!(f, "{m}"),
            ParseErrorKind::BadNumber(m) => write!(f, "invalid number: {m}"),
            ParseErrorKind::DuplicateName(n) => write!(f, "name `{n}` is already bound"),
            ParseErrorKind::UnknownName(n) => write!(f, "unknown name `{n}`"),
            ParseErrorKind::WrongKind { name, expected, found } => {
                write!(f, "`{name}` is {found}, expected {expected}")
            }
            ParseErrorKind::NotAnObject { name, diagram } => {
                write!(f, "`{name}` is not an object of diagram `{diagram}`")
            }
        }
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const DIRECTIVES: &[&str] = &[
    "coalgebra",
    "comodule",
    "morphism",
    "diagram",
    "limit",
    "colimit",
    "verify",
    "mediate",
    "emit",
];

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = self.peek();
        Err(ParseError {
            span: t.span,
            kind: ParseErrorKind::Syntax {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: t.tok.describe(),
            },
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if self.peek().tok == tok {
            Ok(self.bump().span)
        } else {
            self.error(&[&format!("`{}`", tok.symbol())])
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == w)
    }

    fn keyword(&mut self, w: &str) -> PResult<Span> {
        if self.is_word(w) {
            Ok(self.bump().span)
        } else {
            self.error(&[&format!("`{w}`")])
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let name = s.clone();
                let span = self.bump().span;
                Ok(Ident { name, span })
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn count(&mut self) -> PResult<Count> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let text = s.clone();
                let span = self.peek().span;
                let value = text.parse::<u64>().map_err(|_| ParseError {
                    span,
                    kind: ParseErrorKind::BadNumber(text),
                })?;
                self.bump();
                Ok(Count { value, span })
            }
            _ => self.error(&["number"]),
        }
    }

    fn rational(&mut self) -> PResult<Rational> {
        let span = self.peek().span;
        let bad = |text: String| ParseError {
            span,
            kind: ParseErrorKind::BadNumber(text),
        };
        if let Tok::Str(s) = &self.peek().tok {
            let s = s.clone();
            self.bump();
            return s.parse().map_err(|_| bad(s));
        }
        let negative = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(num) = self.peek().tok.clone() else {
            return self.error(&["number"]);
        };
        self.bump();
        let mut text = if negative { format!("-{num}") } else { num };
        if self.peek().tok == Tok::Slash {
            self.bump();
            let Tok::Int(den) = self.peek().tok.clone() else {
                return self.error(&["number"]);
            };
            self.bump();
            text = format!("{text}/{den}");
        }
        text.parse().map_err(|_| bad(text))
    }

    fn unclosed<T>(&self, open: Span) -> PResult<T> {
        Err(ParseError {
            span: open,
            kind: ParseErrorKind::UnclosedBracket {
                found: self.peek().tok.describe(),
            },
        })
    }

    /// `[[a, b], [c, d]]`, `[]` or `[[], []]`.
    fn matrix(&mut self) -> PResult<MatrixLit> {
        let open = self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        if self.peek().tok == Tok::RBracket {
            let close = self.bump().span;
            return Ok(MatrixLit {
                rows,
                span: open.to(close),
            });
        }
        loop {
            if self.peek().tok != Tok::LBracket {
                return self.error(&["`[`", "`]`"]);
            }
            let row_open = self.bump().span;
            let mut row = Vec::new();
            if self.peek().tok != Tok::RBracket {
                loop {
                    if !matches!(self.peek().tok, Tok::Int(_) | Tok::Minus | Tok::Str(_)) {
                        return if row.is_empty() {
                            self.error(&["number", "`]`"])
                        } else {
                            self.error(&["number"])
                        };
                    }
                    row.push(self.rational()?);
                    match self.peek().tok {
                        Tok::Comma => {
                            self.bump();
                        }
                        Tok::RBracket => break,
                        _ => return self.unclosed(row_open),
                    }
                }
            }
            self.bump();
            rows.push(row);
            match self.peek().tok {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBracket => {
                    let close = self.bump().span;
                    return Ok(MatrixLit {
                        rows,
                        span: open.to(close),
                    });
                }
                _ => return self.unclosed(open),
            }
        }
    }

    fn ident_list(&mut self) -> PResult<Vec<Ident>> {
        let mut out = vec![self.ident()?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn call_args(&mut self) -> PResult<Vec<Ident>> {
        self.expect(Tok::LParen)?;
        let args = self.ident_list()?;
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn two_args(&mut self) -> PResult<(Ident, Ident)> {
        self.expect(Tok::LParen)?;
        let a = self.ident()?;
        self.expect(Tok::Comma)?;
        let b = self.ident()?;
        self.expect(Tok::RParen)?;
        Ok((a, b))
    }

    fn one_arg(&mut self) -> PResult<Ident> {
        self.expect(Tok::LParen)?;
        let a = self.ident()?;
        self.expect(Tok::RParen)?;
        Ok(a)
    }

    fn paren_count(&mut self) -> PResult<Count> {
        self.expect(Tok::LParen)?;
        let k = self.count()?;
        self.expect(Tok::RParen)?;
        Ok(k)
    }

    fn coalgebra_def(&mut self) -> PResult<CoalgebraDef> {
        const FORMS: &[&str] = &["`trivial`", "`grouplike`", "`divided_power`", "`matrix`", "`explicit`"];
        let Tok::Ident(w) = self.peek().tok.clone() else {
            return self.error(FORMS);
        };
        match w.as_str() {
            "trivial" => {
                self.bump();
                Ok(CoalgebraDef::Trivial)
            }
            "grouplike" => {
                self.bump();
                Ok(CoalgebraDef::Grouplike(self.paren_count()?))
            }
            "divided_power" => {
                self.bump();
                Ok(CoalgebraDef::DividedPower(self.paren_count()?))
            }
            "matrix" => {
                self.bump();
                Ok(CoalgebraDef::Matrix(self.paren_count()?))
            }
            "explicit" => {
                self.bump();
                self.expect(Tok::LBrace)?;
                self.keyword("dim")?;
                let dim = self.count()?;
                self.expect(Tok::Semi)?;
                self.keyword("delta")?;
                let delta = self.matrix()?;
                self.expect(Tok::Semi)?;
                self.keyword("eps")?;
                let eps = self.matrix()?;
                self.optional_semi();
                self.expect(Tok::RBrace)?;
                Ok(CoalgebraDef::Explicit { dim, delta, eps })
            }
            _ => self.error(FORMS),
        }
    }

    fn optional_semi(&mut self) {
        if self.peek().tok == Tok::Semi {
            self.bump();
        }
    }

    fn comodule_def(&mut self) -> PResult<ComoduleDef> {
        if self.is_word("over") {
            self.bump();
            let coalgebra = self.ident()?;
            self.expect(Tok::LBrace)?;
            self.keyword("dim")?;
            let dim = self.count()?;
            self.expect(Tok::Semi)?;
            self.keyword("rho")?;
            let rho = self.matrix()?;
            self.optional_semi();
            self.expect(Tok::RBrace)?;
            return Ok(ComoduleDef::Explicit { coalgebra, dim, rho });
        }
        if self.peek().tok != Tok::Eq {
            return self.error(&["`over`", "`=`"]);
        }
        self.bump();
        const FORMS: &[&str] = &["`cofree`", "`random`", "`restrict`", "`generate`"];
        let Tok::Ident(w) = self.peek().tok.clone() else {
            return self.error(FORMS);
        };
        match w.as_str() {
            "cofree" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let coalgebra = self.ident()?;
                self.expect(Tok::Comma)?;
                let x_dim = self.count()?;
                self.expect(Tok::RParen)?;
                Ok(ComoduleDef::Cofree { coalgebra, x_dim })
            }
            "random" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let coalgebra = self.ident()?;
                self.expect(Tok::Comma)?;
                let dim = self.count()?;
                self.expect(Tok::Comma)?;
                let seed = self.count()?;
                self.expect(Tok::RParen)?;
                Ok(ComoduleDef::Random { coalgebra, dim, seed })
            }
            "restrict" | "generate" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let comodule = self.ident()?;
                self.expect(Tok::Comma)?;
                let m = self.matrix()?;
                self.expect(Tok::RParen)?;
                Ok(if w == "restrict" {
                    ComoduleDef::Restrict { comodule, basis: m }
                } else {
                    ComoduleDef::Generate { comodule, seeds: m }
                })
            }
            _ => self.error(FORMS),
        }
    }

    fn diagram_body(&mut self) -> PResult<(Vec<Ident>, Vec<ArrowDecl>)> {
        self.expect(Tok::LBrace)?;
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        loop {
            if self.peek().tok == Tok::RBrace {
                self.bump();
                return Ok((objects, arrows));
            }
            if self.is_word("objects") {
                self.bump();
                objects.extend(self.ident_list()?);
            } else if self.is_word("arrow") {
                self.bump();
                let morphism = self.ident()?;
                self.expect(Tok::Colon)?;
                let src = self.ident()?;
                self.expect(Tok::Arrow)?;
                let dst = self.ident()?;
                arrows.push(ArrowDecl { morphism, src, dst });
            } else {
                return self.error(&["`objects`", "`arrow`", "`}`"]);
            }
            match self.peek().tok {
                Tok::Semi => {
                    self.bump();
                }
                Tok::RBrace => {}
                _ => return self.error(&["`;`", "`}`"]),
            }
        }
    }

    fn limit_def(&mut self) -> PResult<LimitDef> {
        const FORMS: &[&str] = &["`limit`", "`product`", "`equalizer`", "`pullback`"];
        let Tok::Ident(w) = self.peek().tok.clone() else {
            return self.error(FORMS);
        };
        match w.as_str() {
            "limit" => {
                self.bump();
                Ok(LimitDef::Limit(self.one_arg()?))
            }
            "product" => {
                self.bump();
                Ok(LimitDef::Product(self.call_args()?))
            }
            "equalizer" => {
                self.bump();
                let (a, b) = self.two_args()?;
                Ok(LimitDef::Equalizer(a, b))
            }
            "pullback" => {
                self.bump();
                let (a, b) = self.two_args()?;
                Ok(LimitDef::Pullback(a, b))
            }
            _ => self.error(FORMS),
        }
    }

    fn colimit_def(&mut self) -> PResult<ColimitDef> {
        const FORMS: &[&str] = &[
            "`colimit`",
            "`coproduct`",
            "`coequalizer`",
            "`pushout`",
            "`cokernel`",
            "`coimage`",
        ];
        let Tok::Ident(w) = self.peek().tok.clone() else {
            return self.error(FORMS);
        };
        match w.as_str() {
            "colimit" => {
                self.bump();
                Ok(ColimitDef::Colimit(self.one_arg()?))
            }
            "coproduct" => {
                self.bump();
                Ok(ColimitDef::Coproduct(self.call_args()?))
            }
            "coequalizer" => {
                self.bump();
                let (a, b) = self.two_args()?;
                Ok(ColimitDef::Coequalizer(a, b))
            }
            "pushout" => {
                self.bump();
                let (a, b) = self.two_args()?;
                Ok(ColimitDef::Pushout(a, b))
            }
            "cokernel" => {
                self.bump();
                Ok(ColimitDef::Cokernel(self.one_arg()?))
            }
            "coimage" => {
                self.bump();
                Ok(ColimitDef::Coimage(self.one_arg()?))
            }
            _ => self.error(FORMS),
        }
    }

    fn directive_error<T>(&self) -> PResult<T> {
        let expected: Vec<String> = DIRECTIVES.iter().map(|d| format!("`{d}`")).collect();
        let refs: Vec<&str> = expected.iter().map(String::as_str).collect();
        self.error(&refs)
    }

    fn directive(&mut self) -> PResult<Directive> {
        let start = self.peek().span;
        let Tok::Ident(w) = self.peek().tok.clone() else {
            return self.directive_error();
        };
        let kind = match w.as_str() {
            "coalgebra" => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                DirectiveKind::Coalgebra {
                    name,
                    def: self.coalgebra_def()?,
                }
            }
            "comodule" => {
                self.bump();
                let name = self.ident()?;
                DirectiveKind::Comodule {
                    name,
                    def: self.comodule_def()?,
                }
            }
            "morphism" => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Colon)?;
                let src = self.ident()?;
                self.expect(Tok::Arrow)?;
                let dst = self.ident()?;
                self.expect(Tok::Eq)?;
                let mat = self.matrix()?;
                DirectiveKind::Morphism { name, src, dst, mat }
            }
            "diagram" => {
                self.bump();
                let name = self.ident()?;
                let (objects, arrows) = self.diagram_body()?;
                DirectiveKind::Diagram { name, objects, arrows }
            }
            "limit" => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                DirectiveKind::Limit {
                    name,
                    def: self.limit_def()?,
                }
            }
            "colimit" => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Eq)?;
                DirectiveKind::Colimit {
                    name,
                    def: self.colimit_def()?,
                }
            }
            "verify" => {
                self.bump();
                DirectiveKind::Verify(self.ident()?)
            }
            "emit" => {
                self.bump();
                DirectiveKind::Emit(self.ident()?)
            }
            "mediate" => {
                self.bump();
                let target = self.ident()?;
                self.keyword("from")?;
                self.expect(Tok::LParen)?;
                let from = self.ident()?;
                self.expect(Tok::Semi)?;
                self.keyword("legs")?;
                let legs = self.ident_list()?;
                self.expect(Tok::RParen)?;
                DirectiveKind::Mediate { target, from, legs }
            }
            _ => return self.directive_error(),
        };
        let end = self.toks[self.pos.saturating_sub(1)].span;
        Ok(Directive {
            span: start.to(end),
            kind,
        })
    }
}

/// Parses a session and checks that every name is bound exactly once, before use.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let toks = tokenize(text).map_err(|e| ParseError {
        span: e.span,
        kind: ParseErrorKind::Lex(e.message),
    })?;
    let mut p = Parser { toks, pos: 0 };
    let mut session = Session::default();
    while p.peek().tok != Tok::Eof {
        session.directives.push(p.directive()?);
    }
    resolve(&session)?;
    Ok(session)
}

/// What a bound name denotes, as far as resolution can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Coalgebra,
    Comodule,
    Morphism,
    Diagram,
    Limit,
    Colimit,
    Coimage,
}

impl Kind {
    fn describe(self) -> &'static str {
        match self {
            Kind::Coalgebra => "a coalgebra",
            Kind::Comodule => "a comodule",
            Kind::Morphism => "a morphism",
            Kind::Diagram => "a diagram",
            Kind::Limit => "a limit",
            Kind::Colimit => "a colimit",
            Kind::Coimage => "a coimage",
        }
    }
}

/// What a reference position accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expect {
    Coalgebra,
    /// Comodules and anything with an apex.
    Comodule,
    Morphism,
    Diagram,
    /// Limits and colimits.
    Universal,
    Any,
}

impl Expect {
    fn accepts(self, k: Kind) -> bool {
        match self {
            Expect::Coalgebra => k == Kind::Coalgebra,
            Expect::Comodule => matches!(k, Kind::Comodule | Kind::Limit | Kind::Colimit | Kind::Coimage),
            Expect::Morphism => k == Kind::Morphism,
            Expect::Diagram => k == Kind::Diagram,
            Expect::Universal => matches!(k, Kind::Limit | Kind::Colimit),
            Expect::Any => true,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Expect::Coalgebra => "a coalgebra",
            Expect::Comodule => "a comodule",
            Expect::Morphism => "a morphism",
            Expect::Diagram => "a diagram",
            Expect::Universal => "a limit or colimit",
            Expect::Any => "a value",
        }
    }
}

fn all(vs: &[Ident], e: Expect) -> Vec<(&Ident, Expect)> {
    vs.iter().map(|v| (v, e)).collect()
}

fn expectations(d: &Directive) -> Vec<(&Ident, Expect)> {
    use Expect::*;
    match &d.kind {
        DirectiveKind::Coalgebra { .. } => vec![],
        DirectiveKind::Comodule { def, .. } => match def {
            ComoduleDef::Explicit { coalgebra, .. }
            | ComoduleDef::Cofree { coalgebra, .. }
            | ComoduleDef::Random { coalgebra, .. } => vec![(coalgebra, Coalgebra)],
            ComoduleDef::Restrict { comodule, .. } | ComoduleDef::Generate { comodule, .. } => {
                vec![(comodule, Comodule)]
            }
        },
        DirectiveKind::Morphism { src, dst, .. } => vec![(src, Comodule), (dst, Comodule)],
        DirectiveKind::Diagram { objects, arrows, .. } => {
            let mut v = all(objects, Comodule);
            v.extend(arrows.iter().map(|a| (&a.morphism, Morphism)));
            v
        }
        DirectiveKind::Limit { def, .. } => match def {
            LimitDef::Limit(d) => vec![(d, Diagram)],
            LimitDef::Product(vs) => all(vs, Comodule),
            LimitDef::Equalizer(f, g) | LimitDef::Pullback(f, g) => vec![(f, Morphism), (g, Morphism)],
        },
        DirectiveKind::Colimit { def, .. } => match def {
            ColimitDef::Colimit(d) => vec![(d, Diagram)],
            ColimitDef::Coproduct(vs) => all(vs, Comodule),
            ColimitDef::Coequalizer(f, g) | ColimitDef::Pushout(f, g) => vec![(f, Morphism), (g, Morphism)],
            ColimitDef::Cokernel(f) | ColimitDef::Coimage(f) => vec![(f, Morphism)],
        },
        DirectiveKind::Verify(n) | DirectiveKind::Emit(n) => vec![(n, Any)],
        DirectiveKind::Mediate { target, from, legs } => {
            let mut v = vec![(target, Universal), (from, Comodule)];
            v.extend(all(legs, Morphism));
            v
        }
    }
}

fn bound_kind(d: &Directive) -> Option<Kind> {
    Some(match &d.kind {
        DirectiveKind::Coalgebra { .. } => Kind::Coalgebra,
        DirectiveKind::Comodule { .. } => Kind::Comodule,
        DirectiveKind::Morphism { .. } => Kind::Morphism,
        DirectiveKind::Diagram { .. } => Kind::Diagram,
        DirectiveKind::Limit { .. } => Kind::Limit,
        DirectiveKind::Colimit {
            def: ColimitDef::Coimage(_),
            ..
        } => Kind::Coimage,
        DirectiveKind::Colimit { .. } => Kind::Colimit,
        _ => return None,
    })
}

fn resolve(s: &Session) -> Result<(), ParseError> {
    let mut bound: HashMap<&str, Kind> = HashMap::new();
    for d in &s.directives {
        for (r, expect) in expectations(d) {
            let Some(&kind) = bound.get(r.name.as_str()) else {
                return Err(ParseError {
                    span: r.span,
                    kind: ParseErrorKind::UnknownName(r.name.clone()),
                });
            };
            if !expect.accepts(kind) {
                return Err(ParseError {
                    span: r.span,
                    kind: ParseErrorKind::WrongKind {
                        name: r.name.clone(),
                        expected: expect.describe().into(),
                        found: kind.describe().into(),
                    },
                });
            }
        }
        if let DirectiveKind::Diagram { name, objects, arrows } = &d.kind {
            let local: HashSet<&str> = objects.iter().map(|o| o.name.as_str()).collect();
            if local.len() != objects.len() {
                let dup = objects
                    .iter()
                    .enumerate()
                    .find(|(i, o)| objects[..*i].iter().any(|p| p.name == o.name))
                    .map(|(_, o)| o)
                    .expect("a repeated object");
                return Err(ParseError {
                    span: dup.span,
                    kind: ParseErrorKind::DuplicateName(dup.name.clone()),
                });
            }
            for end in arrows.iter().flat_map(|a| [&a.src, &a.dst]) {
                if !local.contains(end.name.as_str()) {
                    return Err(ParseError {
                        span: end.span,
                        kind: ParseErrorKind::NotAnObject {
                            name: end.name.clone(),
                            diagram: name.name.clone(),
                        },
                    });
                }
            }
        }
        if let (Some(name), Some(kind)) = (d.binds(), bound_kind(d)) {
            if bound.insert(name.name.as_str(), kind).is_some() {
                return Err(ParseError {
                    span: name.span,
                    kind: ParseErrorKind::DuplicateName(name.name.clone()),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_coalgebra() {
        let s = parse_session("coalgebra C = grouplike(2)").unwrap();
        assert_eq!(s.directives.len(), 1);
        assert_eq!(s.directives[0].binds().unwrap().name, "C");
    }

    #[test]
    fn explicit_forms() {
        let src = "coalgebra C = explicit { dim 1; delta [[1]]; eps [[1]] }\n\
                   comodule M over C { dim 1; rho [[1]] }\n\
                   morphism f : M -> M = [[\"1/2\"]]\n";
        let s = parse_session(src).unwrap();
        match &s.directives[2].kind {
            DirectiveKind::Morphism { mat, .. } => assert_eq!(mat.rows, vec![vec![Rational::new(1, 2)]]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unclosed_bracket_points_at_the_bracket() {
        let src = "coalgebra C = trivial\ncomodule M over C { dim 1; rho [[1]] }\nmorphism f : M -> M = [[1,2]\n";
        let err = parse_session(src).unwrap_err();
        assert_eq!((err.span.line, err.span.column), (3, 23));
        assert!(matches!(err.kind, ParseErrorKind::UnclosedBracket { .. }));
    }

    #[test]
    fn syntax_errors_list_expectations() {
        let err = parse_session("coalgebra C grouplike(2)").unwrap_err();
        assert_eq!(err.expected(), &["`=`".to_string()]);
        assert_eq!((err.span.line, err.span.column), (1, 13));
        let err = parse_session("bogus X").unwrap_err();
        assert_eq!(err.expected().len(), DIRECTIVES.len());
    }

    #[test]
    fn names_bind_once_before_use() {
        let err = parse_session("coalgebra C = trivial\ncoalgebra C = trivial").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateName("C".into()));
        assert_eq!(err.span.line, 2);
        let err = parse_session("comodule M = cofree(D, 1)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownName("D".into()));
        assert_eq!(err.span.column, 21);
    }

    #[test]
    fn diagram_endpoints_must_be_objects() {
        let src = "coalgebra C = trivial\ncomodule A = cofree(C, 1)\nmorphism f : A -> A = [[1]]\n\
                   diagram D { objects A; arrow f : A -> B }";
        let err = parse_session(src).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::NotAnObject { .. }));
    }

    #[test]
    fn references_must_have_the_right_kind() {
        let err =
            parse_session("coalgebra C = trivial\ncomodule M = cofree(C, 1)\ncomodule N = cofree(M, 1)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::WrongKind { .. }));
        assert_eq!((err.span.line, err.span.column), (3, 21));
        let err =
            parse_session("coalgebra C = trivial\ncomodule M = cofree(C, 1)\nmediate M from (M; legs M)").unwrap_err();
        assert!(err.to_string().contains("expected a limit or colimit"));
    }

    #[test]
    fn printing_is_a_fixed_point() {
        let src = "# demo\ncoalgebra C = divided_power(2)\ncomodule M = cofree(C, 1)\n\
                   morphism f : M -> M = [[1, 0], [0, -1/3]]\n\
                   diagram D { objects M; arrow f : M -> M; }\nlimit L = limit(D)\n\
                   colimit Q = coequalizer(f, f)\nmediate L from (M; legs f)\nverify L\nemit L\n";
        let s = parse_session(src).unwrap();
        let printed = print_session(&s);
        let again = print_session(&parse_session(&printed).unwrap());
        assert_eq!(printed, again);
    }

    #[test]
    fn empty_matrices() {
        let s = parse_session("coalgebra C = trivial\ncomodule Z over C { dim 0; rho [] }\nmorphism z : Z -> Z = []")
            .unwrap();
        assert_eq!(s.directives.len(), 3);
    }
}
