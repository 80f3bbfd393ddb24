use std::sync::Arc;

use super::{ComodMorphism, Comodule};
use crate::coalg::{dual_algebra, Coalgebra, DualAlgebra, ASSOCIATIVITY, LEFT_UNIT, SHAPE};
use crate::error::{Error, Result};
use crate::exactlin::{Rational, RationalMatrix};
use crate::report::ValidationReport;

/// A right module over the dual algebra `C*`, given by the action matrices of
/// the dual basis: `v · φ_k = actions[k] · v`.
///
/// Composition of right actions reverses the matrix order, so the module law
/// reads `act(φ_a φ_b) = actions[b] · actions[a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualModule {
    pub algebra: DualAlgebra,
    pub dim: usize,
    pub actions: Vec<RationalMatrix>,
}

pub fn to_dual_module(v: &Comodule) -> DualModule {
    DualModule {
        algebra: dual_algebra(&v.coalgebra),
        dim: v.dim,
        actions: v.blocks(),
    }
}

/// Inverse of [`to_dual_module`] on raw data; no axioms are checked.
pub fn from_dual_module(c: &Arc<Coalgebra>, m: &DualModule) -> Result<Comodule> {
    if m.actions.len() != c.dim || m.actions.iter().any(|a| a.shape() != (m.dim, m.dim)) {
        return Err(Error::dims(format!(
            "{} action matrices of dimension {} for a coalgebra of dimension {}",
            m.actions.len(),
            m.dim,
            c.dim
        )));
    }
    Ok(Comodule::from_parts(
        c.clone(),
        m.dim,
        RationalMatrix::vstack_all(m.dim, &m.actions),
    ))
}

impl DualModule {
    /// Action of an arbitrary element of `C*` given in the dual basis.
    pub fn act(&self, element: &[Rational]) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.dim, self.dim);
        for (k, coeff) in element.iter().enumerate() {
            if !coeff.is_zero() {
                out = out.add(&self.actions[k].scale(coeff)).expect("square actions");
            }
        }
        out
    }

    /// Right-module associativity and unit law. Witnesses index the failing
    /// pair `a * n + b`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.algebra.dim;
        if self.actions.len() != n || self.actions.iter().any(|a| a.shape() != (self.dim, self.dim)) {
            report.fail(SHAPE, 0);
            return report;
        }
        report.pass(SHAPE);
        let mut witness = None;
        'outer: for a in 0..n {
            for b in 0..n {
                let lhs = self.act(&self.algebra.product(a, b));
                let rhs = self.actions[b].mul_unchecked(&self.actions[a]);
                if lhs != rhs {
                    witness = Some(a * n + b);
                    break 'outer;
                }
            }
        }
        report.record(ASSOCIATIVITY, witness);
        let unit = self.act(&self.algebra.unit.column(0));
        report.record(
            LEFT_UNIT,
            unit.first_differing_column(&RationalMatrix::identity(self.dim)),
        );
        report
    }
}

/// `f · A_k^src = A_k^dst · f` for every basis element of `C*`.
pub fn is_dual_homomorphism(f: &ComodMorphism) -> bool {
    let (src, dst) = (to_dual_module(&f.src), to_dual_module(&f.dst));
    if src.actions.len() != dst.actions.len() || f.mat.shape() != (dst.dim, src.dim) {
        return false;
    }
    src.actions
        .iter()
        .zip(&dst.actions)
        .all(|(a, b)| f.mat.mul_unchecked(a) == b.mul_unchecked(&f.mat))
}
