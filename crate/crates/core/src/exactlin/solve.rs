use super::{kernel_basis, nullity, rref, RationalMatrix, Subspace};
use crate::error::{Error, Result};

/// Quotient `Q^n / s` with a chosen splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientData {
    pub ambient_dim: usize,
    pub kernel: Subspace,
    /// `(n - k) x n`, surjective, kernel exactly `kernel`.
    pub projection: RationalMatrix,
    /// `n x (n - k)`, embeds the quotient on the non-pivot coordinates.
    pub section: RationalMatrix,
}

impl QuotientData {
    pub fn new(ambient: usize, s: &Subspace) -> Result<Self> {
        if s.ambient_dim() != ambient {
            return Err(Error::dims(format!(
                "quotient of dimension {ambient} by a subspace of dimension-{} space",
                s.ambient_dim()
            )));
        }
        let free = s.non_pivots();
        let projection = s.annihilator();
        let mut section = RationalMatrix::zeros(ambient, free.len());
        for (k, &r) in free.iter().enumerate() {
            section[(r, k)] = super::Rational::one();
        }
        Ok(QuotientData {
            ambient_dim: ambient,
            kernel: s.clone(),
            projection,
            section,
        })
    }

    pub fn quotient_dim(&self) -> usize {
        self.projection.rows()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSide {
    /// Find `g` with `through · g = f`.
    Left,
    /// Find `g` with `g · through = f`.
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSolution {
    pub solution: RationalMatrix,
    /// Dimension of the solution set of the homogeneous system; 0 means unique.
    pub kernel_dim: usize,
}

/// Solves `through · g = f` (or `g · through = f`) exactly. Free variables are
/// set to zero, so the returned solution is deterministic.
pub fn solve_factor(through: &RationalMatrix, f: &RationalMatrix, side: FactorSide) -> Result<FactorSolution> {
    match side {
        FactorSide::Left => solve_left(through, f),
        FactorSide::Right => {
            let t = solve_left(&through.transpose(), &f.transpose())?;
            Ok(FactorSolution {
                solution: t.solution.transpose(),
                kernel_dim: t.kernel_dim,
            })
        }
    }
}

fn solve_left(a: &RationalMatrix, f: &RationalMatrix) -> Result<FactorSolution> {
    if a.rows() != f.rows() {
        return Err(Error::dims(format!(
            "cannot factor a {}x{} map through a {}x{} one",
            f.rows(),
            f.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let n = a.cols();
    let (r, pivots) = rref(&a.hstack(f)?);
    if let Some(&p) = pivots.iter().find(|&&p| p >= n) {
        return Err(Error::NoSolution(format!(
            "column {} of the target is outside the image",
            p - n
        )));
    }
    let mut g = RationalMatrix::zeros(n, f.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..f.cols() {
            g[(p, j)] = r[(i, n + j)].clone();
        }
    }
    Ok(FactorSolution {
        solution: g,
        kernel_dim: (n - pivots.len()) * f.cols(),
    })
}

/// Homogeneous linear system in an unknown matrix `X` (`rows x cols`), given
/// as families of equations `Σ_t A_t · X · B_t = 0`.
///
/// Row-major vectorization turns `A X B` into `kron(A, Bᵀ) · vec(X)`.
#[derive(Debug, Clone)]
pub struct SylvesterSystem {
    rows: usize,
    cols: usize,
    blocks: Vec<RationalMatrix>,
}

impl SylvesterSystem {
    pub fn new(rows: usize, cols: usize) -> Self {
        SylvesterSystem {
            rows,
            cols,
            blocks: Vec::new(),
        }
    }

    /// Adds `Σ_t A_t X B_t = 0`; every term must produce the same shape.
    pub fn equation(&mut self, terms: &[(&RationalMatrix, &RationalMatrix)]) -> Result<&mut Self> {
        let mut acc: Option<RationalMatrix> = None;
        for (a, b) in terms {
            if a.cols() != self.rows || b.rows() != self.cols {
                return Err(Error::dims(format!(
                    "term {}x{} · X · {}x{} with X of shape {}x{}",
                    a.rows(),
                    a.cols(),
                    b.rows(),
                    b.cols(),
                    self.rows,
                    self.cols
                )));
            }
            let block = a.kron(&b.transpose());
            acc = Some(match acc {
                None => block,
                Some(prev) => prev.add(&block)?,
            });
        }
        if let Some(block) = acc {
            self.blocks.push(block);
        }
        Ok(self)
    }

    fn coefficients(&self) -> RationalMatrix {
        RationalMatrix::vstack_all(self.rows * self.cols, &self.blocks)
    }

    /// Dimension of the solution space.
    pub fn solution_dim(&self) -> usize {
        nullity(&self.coefficients())
    }

    /// A basis of the solution space, each element reshaped to `rows x cols`.
    pub fn solution_basis(&self) -> Vec<RationalMatrix> {
        let k = kernel_basis(&self.coefficients());
        (0..k.cols())
            .map(|j| RationalMatrix::from_vec(self.rows, self.cols, k.column(j)).expect("reshape"))
            .collect()
    }
}
