use super::{kernel, rref_in_place, Rational, RationalMatrix};
use crate::error::{Error, Result};

/// A subspace of `Q^n` stored by its reduced column-echelon basis.
///
/// Column `t` of the basis has a `1` in row `pivots[t]` and zeros in every
/// other pivot row, and pivots increase. Two subspaces are equal iff their
/// bases are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: RationalMatrix::zeros(ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: RationalMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonical basis of the column span of `m`.
    pub fn from_spanning(m: &RationalMatrix) -> Result<Self> {
        let mut t = m.transpose();
        let pivots = rref_in_place(&mut t);
        let k = pivots.len();
        let basis = t.row_block(0, k).transpose();
        Ok(Subspace { basis, pivots })
    }

    pub fn from_vectors(ambient: usize, vs: &[Vec<Rational>]) -> Result<Self> {
        Self::from_spanning(&RationalMatrix::from_columns(ambient, vs)?)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// `ambient x dim` matrix whose columns are the canonical basis.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if self.ambient_dim() != n {
            return Err(Error::dims(format!(
                "subspaces of dimension-{} and dimension-{n} spaces",
                self.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not in
    /// the subspace. Reading the pivot entries gives the only candidate.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        self.check_ambient(v.len())?;
        let x: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.mul_vec(&x)?;
        Ok((back == v).then_some(x))
    }

    /// Coordinates for every column of `m`; `None` if some column lies outside.
    pub fn coordinates_matrix(&self, m: &RationalMatrix) -> Result<Option<RationalMatrix>> {
        self.check_ambient(m.rows())?;
        let x = m.select_rows(&self.pivots);
        let back = self.basis.mul(&x)?;
        Ok((&back == m).then_some(x))
    }

    /// First column of `m` that does not lie in the subspace.
    pub fn first_column_outside(&self, m: &RationalMatrix) -> Result<Option<usize>> {
        self.check_ambient(m.rows())?;
        let back = self.basis.mul(&m.select_rows(&self.pivots))?;
        Ok(back.first_differing_column(m))
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other.ambient_dim())?;
        Ok(self.first_column_outside(&other.basis)?.is_none())
    }

    /// Rows of a full-row-rank matrix whose kernel is exactly this subspace:
    /// one functional `e_r - Σ_t B[r,t] e_{p_t}` per non-pivot coordinate `r`.
    pub fn annihilator(&self) -> RationalMatrix {
        let n = self.ambient_dim();
        let free = self.non_pivots();
        let mut a = RationalMatrix::zeros(free.len(), n);
        for (row, &r) in free.iter().enumerate() {
            a[(row, r)] = Rational::one();
            for (t, &p) in self.pivots.iter().enumerate() {
                let b = &self.basis[(r, t)];
                if !b.is_zero() {
                    a[(row, p)] = -b;
                }
            }
        }
        a
    }

    /// Coordinates not occupied by a pivot, increasing.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim()).filter(|&i| !is_pivot[i]).collect()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim())?;
        Ok(kernel(&self.annihilator().vstack(&other.annihilator())?))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim())?;
        Subspace::from_spanning(&self.basis.hstack(&other.basis)?)
    }

    /// `C ⊗ self` inside `C ⊗ ambient` for `dim C = n`.
    pub fn tensor_left(&self, n: usize) -> Subspace {
        Subspace::from_spanning(&RationalMatrix::identity(n).kron(&self.basis))
            .expect("tensor of a subspace is well-formed")
    }

    /// Image of this subspace under `m`.
    pub fn map(&self, m: &RationalMatrix) -> Result<Subspace> {
        Subspace::from_spanning(&m.mul(&self.basis)?)
    }
}
