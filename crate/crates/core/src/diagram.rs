//! Finite diagrams of comodules: the input to limit and colimit solvers.

use std::sync::Arc;

use crate::coalg::Coalgebra;
use crate::comod::{validate_comodule, validate_morphism, ComodMorphism, Comodule};
use crate::error::{Error, Result};
use crate::exactlin::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub dst: usize,
    pub morphism: ComodMorphism,
}

/// Labeled objects and arrows over one coalgebra. Arrows may repeat
/// endpoints (a multigraph) and loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub coalgebra: Arc<Coalgebra>,
    pub objects: Vec<(String, Arc<Comodule>)>,
    pub arrows: Vec<Arrow>,
}

impl Diagram {
    pub fn new(coalgebra: Arc<Coalgebra>) -> Self {
        Diagram {
            coalgebra,
            objects: Vec::new(),
            arrows: Vec::new(),
        }
    }

    /// Objects only, labeled `M0, M1, ...`.
    pub fn discrete(coalgebra: &Arc<Coalgebra>, vs: &[Arc<Comodule>]) -> Result<Self> {
        let mut d = Diagram::new(coalgebra.clone());
        for (i, v) in vs.iter().enumerate() {
            d.add_object(format!("M{i}"), v.clone())?;
        }
        Ok(d)
    }

    /// `f, g : A ⇉ B`.
    pub fn parallel_pair(f: &ComodMorphism, g: &ComodMorphism) -> Result<Self> {
        if f.src != g.src || f.dst != g.dst {
            return Err(Error::InvalidDiagram(
                "parallel arrows must share source and target".into(),
            ));
        }
        let mut d = Diagram::new(f.src.coalgebra.clone());
        let a = d.add_object("A", f.src.clone())?;
        let b = d.add_object("B", f.dst.clone())?;
        d.add_arrow("f", a, b, f.mat.clone())?;
        d.add_arrow("g", a, b, g.mat.clone())?;
        Ok(d)
    }

    /// `B <- A -> C` for `f : A -> B`, `g : A -> C`.
    pub fn span(f: &ComodMorphism, g: &ComodMorphism) -> Result<Self> {
        if f.src != g.src {
            return Err(Error::InvalidDiagram("span legs must share a source".into()));
        }
        let mut d = Diagram::new(f.src.coalgebra.clone());
        let a = d.add_object("A", f.src.clone())?;
        let b = d.add_object("B", f.dst.clone())?;
        let c = d.add_object("C", g.dst.clone())?;
        d.add_arrow("f", a, b, f.mat.clone())?;
        d.add_arrow("g", a, c, g.mat.clone())?;
        Ok(d)
    }

    /// `A -> C <- B` for `f : A -> C`, `g : B -> C`.
    pub fn cospan(f: &ComodMorphism, g: &ComodMorphism) -> Result<Self> {
        if f.dst != g.dst {
            return Err(Error::InvalidDiagram("cospan legs must share a target".into()));
        }
        let mut d = Diagram::new(f.src.coalgebra.clone());
        let a = d.add_object("A", f.src.clone())?;
        let b = d.add_object("B", g.src.clone())?;
        let c = d.add_object("C", f.dst.clone())?;
        d.add_arrow("f", a, c, f.mat.clone())?;
        d.add_arrow("g", b, c, g.mat.clone())?;
        Ok(d)
    }

    pub fn add_object(&mut self, label: impl Into<String>, v: Arc<Comodule>) -> Result<usize> {
        if *v.coalgebra != *self.coalgebra {
            return Err(Error::MixedCoalgebras(
                self.coalgebra.name.clone(),
                v.coalgebra.name.clone(),
            ));
        }
        self.objects.push((label.into(), v));
        Ok(self.objects.len() - 1)
    }

    pub fn add_arrow(&mut self, label: impl Into<String>, src: usize, dst: usize, mat: RationalMatrix) -> Result<()> {
        let label = label.into();
        let (Some(s), Some(t)) = (self.objects.get(src), self.objects.get(dst)) else {
            return Err(Error::InvalidDiagram(format!(
                "arrow `{label}` refers to a missing object"
            )));
        };
        let morphism = ComodMorphism::from_parts(s.1.clone(), t.1.clone(), mat);
        self.arrows.push(Arrow {
            label,
            src,
            dst,
            morphism,
        });
        Ok(())
    }

    pub fn object(&self, i: usize) -> &Arc<Comodule> {
        &self.objects[i].1
    }

    pub fn comodules(&self) -> Vec<Arc<Comodule>> {
        self.objects.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|(l, _)| l == label)
    }

    /// Shared coalgebra, valid objects, arrows with matching endpoints that
    /// are comodule maps.
    pub fn validate(&self) -> Result<()> {
        for (label, v) in &self.objects {
            if *v.coalgebra != *self.coalgebra {
                return Err(Error::MixedCoalgebras(
                    self.coalgebra.name.clone(),
                    v.coalgebra.name.clone(),
                ));
            }
            let report = validate_comodule(v);
            if !report.is_valid() {
                return Err(Error::InvalidDiagram(format!("object `{label}`: {report}")));
            }
        }
        for a in &self.arrows {
            if a.src >= self.objects.len() || a.dst >= self.objects.len() {
                return Err(Error::InvalidDiagram(format!(
                    "arrow `{}` refers to a missing object",
                    a.label
                )));
            }
            if *a.morphism.src != **self.object(a.src) || *a.morphism.dst != **self.object(a.dst) {
                return Err(Error::InvalidDiagram(format!(
                    "arrow `{}` endpoints do not match its objects",
                    a.label
                )));
            }
            let report = validate_morphism(&a.morphism);
            if !report.is_valid() {
                return Err(Error::InvalidDiagram(format!("arrow `{}`: {report}", a.label)));
            }
        }
        Ok(())
    }

    /// Sum of object dimensions.
    pub fn total_dim(&self) -> usize {
        self.objects.iter().map(|(_, v)| v.dim).sum()
    }

    /// Offsets of each object inside the direct sum of all objects.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.objects
            .iter()
            .map(|(_, v)| {
                let o = acc;
                acc += v.dim;
                o
            })
            .collect()
    }
}
