//! Exact dense linear algebra over the rationals.
//!
//! Column-vector convention throughout; tensor products flatten
//! left-factor-major (`e_i ⊗ e_j` sits at `i * dim + j`).

mod matrix;
mod rational;
mod solve;
mod subspace;

pub use matrix::RationalMatrix;
pub use rational::{ParseRationalError, Rational};
pub use solve::{solve_factor, FactorSide, FactorSolution, QuotientData, SylvesterSystem};
pub use subspace::Subspace;

/// Reduced row-echelon form and the strictly increasing pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let pivots = rref_in_place(&mut a);
    (a, pivots)
}

pub(crate) fn rref_in_place(a: &mut RationalMatrix) -> Vec<usize> {
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        swap_rows(a, r, p);
        let inv = a[(r, c)].recip();
        // Entries left of `c` in row r are already zero.
        let support: Vec<usize> = (c..cols).filter(|&j| !a[(r, j)].is_zero()).collect();
        for &j in &support {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for &j in &support {
                let delta = &factor * &a[(r, j)];
                a[(i, j)] -= &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn swap_rows(a: &mut RationalMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols() {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1.len()
}

/// `{v : m·v = 0}` in canonical form.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    Subspace::from_spanning(&kernel_basis(m)).expect("kernel basis has the right ambient")
}

/// Raw kernel basis from the echelon form: one vector per free column.
pub(crate) fn kernel_basis(m: &RationalMatrix) -> RationalMatrix {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&j| !is_pivot[j]).collect();
    let mut basis = RationalMatrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            let x = &r[(i, f)];
            if !x.is_zero() {
                basis[(p, k)] = -x;
            }
        }
    }
    basis
}

pub fn nullity(m: &RationalMatrix) -> usize {
    m.cols() - rank(m)
}

/// Column space in canonical form.
pub fn image(m: &RationalMatrix) -> Subspace {
    Subspace::from_spanning(m).expect("column space of a matrix is well-formed")
}

pub fn intersect(a: &Subspace, b: &Subspace) -> crate::Result<Subspace> {
    a.intersect(b)
}

pub fn sum(a: &Subspace, b: &Subspace) -> crate::Result<Subspace> {
    a.sum(b)
}

pub fn contains(a: &Subspace, b: &Subspace) -> crate::Result<bool> {
    a.contains(b)
}

/// `{w : m·w ∈ s}`.
pub fn preimage_subspace(m: &RationalMatrix, s: &Subspace) -> crate::Result<Subspace> {
    if m.rows() != s.ambient_dim() {
        return Err(crate::Error::dims(format!(
            "map has {} rows but the subspace lives in dimension {}",
            m.rows(),
            s.ambient_dim()
        )));
    }
    Ok(kernel(&s.annihilator().mul_unchecked(m)))
}

pub fn kronecker(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    a.kron(b)
}

pub fn quotient(ambient: usize, s: &Subspace) -> crate::Result<QuotientData> {
    QuotientData::new(ambient, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows)
    }

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let (r, p) = rref(&RationalMatrix::identity(3));
        assert_eq!(r, RationalMatrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = rref(&m(&[&[0]]));
        assert_eq!(r, m(&[&[0]]));
        assert!(p.is_empty());
    }

    #[test]
    fn rref_with_fractions() {
        let (r, p) = rref(&m(&[&[2, 1, 0], &[4, 3, 1]]));
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.row(0), &[q(1), q(0), Rational::new(-1, 2)]);
        assert_eq!(r.row(1), &[q(0), q(1), q(1)]);
    }

    #[test]
    fn kernel_examples() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let k = kernel(&a);
        assert_eq!(k.dim(), 1);
        let v = k.basis().column(0);
        assert!(a.mul_vec(&v).unwrap().iter().all(Rational::is_zero));
        // canonical generator of span(-2, 1): pivot at the first coordinate
        assert_eq!(v, vec![q(1), Rational::new(-1, 2)]);

        assert_eq!(kernel(&RationalMatrix::identity(4)).dim(), 0);
        assert_eq!(kernel(&RationalMatrix::zeros(2, 3)), Subspace::full(3));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image(&m(&[&[1], &[1]])).basis(), &m(&[&[1], &[1]]));
        assert_eq!(image(&RationalMatrix::zeros(3, 2)), Subspace::zero(3));
        assert_eq!(image(&m(&[&[1, 2], &[2, 4]])).basis(), &m(&[&[1], &[2]]));
    }

    #[test]
    fn intersection_and_sum_examples() {
        let e1 = Subspace::from_spanning(&m(&[&[1], &[0]])).unwrap();
        let e2 = Subspace::from_spanning(&m(&[&[0], &[1]])).unwrap();
        assert_eq!(e1.intersect(&e2).unwrap(), Subspace::zero(2));
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2));

        let x = Subspace::full(3);
        let u = Subspace::from_spanning(&m(&[&[1], &[1], &[0]])).unwrap();
        assert_eq!(x.intersect(&u).unwrap(), u);
        assert_eq!(x.sum(&u).unwrap(), x);

        let a = Subspace::from_spanning(&m(&[&[1, 0], &[0, 1], &[1, 0]])).unwrap();
        let b = Subspace::from_spanning(&m(&[&[1, 0], &[1, 0], &[1, 1]])).unwrap();
        let meet = a.intersect(&b).unwrap();
        let join = a.sum(&b).unwrap();
        assert_eq!(meet.dim(), 1);
        // brute-force membership: (1,1,1) lies in both
        let v = vec![q(1), q(1), q(1)];
        assert!(meet.contains_vector(&v).unwrap());
        assert!(a.contains_vector(&v).unwrap() && b.contains_vector(&v).unwrap());
        assert_eq!(a.dim() + b.dim(), meet.dim() + join.dim());
    }

    #[test]
    fn mismatched_ambients_are_rejected() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(a.intersect(&b).is_err());
        assert!(a.sum(&b).is_err());
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn containment_examples() {
        let full = Subspace::full(2);
        let e1 = Subspace::from_spanning(&m(&[&[1], &[0]])).unwrap();
        let diag = Subspace::from_spanning(&m(&[&[1], &[1]])).unwrap();
        assert!(full.contains(&diag).unwrap());
        assert!(diag.contains(&Subspace::zero(2)).unwrap());
        assert!(!e1.contains(&diag).unwrap());
    }

    #[test]
    fn preimage_examples() {
        let a = m(&[&[1, 2, 0], &[0, 0, 1]]);
        assert_eq!(preimage_subspace(&a, &Subspace::full(2)).unwrap(), Subspace::full(3));
        assert_eq!(preimage_subspace(&a, &Subspace::zero(2)).unwrap(), kernel(&a));

        let incl = m(&[&[1, 0], &[0, 1], &[0, 0]]);
        let s = Subspace::from_spanning(&m(&[&[1, 0], &[0, 0], &[0, 1]])).unwrap();
        let pre = preimage_subspace(&incl, &s).unwrap();
        assert_eq!(pre, Subspace::from_spanning(&m(&[&[1], &[0]])).unwrap());
        assert!(preimage_subspace(&incl, &Subspace::full(2)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q0 = quotient(3, &Subspace::zero(3)).unwrap();
        assert!(q0.projection.is_identity());

        let qf = quotient(3, &Subspace::full(3)).unwrap();
        assert_eq!(qf.projection.shape(), (0, 3));

        let s = Subspace::from_spanning(&m(&[&[1], &[1], &[0]])).unwrap();
        let qs = quotient(3, &s).unwrap();
        assert_eq!(qs.projection.rows(), 2);
        assert!(qs.projection.mul(s.basis()).unwrap().is_zero());
        assert!(qs.projection.mul(&qs.section).unwrap().is_identity());
        assert_eq!(kernel(&qs.projection), s);
        assert!(quotient(2, &s).is_err());
    }

    #[test]
    fn solve_factor_examples() {
        let f = m(&[&[1, 2], &[3, 4]]);
        let sol = solve_factor(&RationalMatrix::identity(2), &f, FactorSide::Left).unwrap();
        assert_eq!(sol.solution, f);
        assert_eq!(sol.kernel_dim, 0);

        let through = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let sol = solve_factor(&through, &through, FactorSide::Right).unwrap();
        assert_eq!(sol.solution.mul(&through).unwrap(), through);

        let sol = solve_factor(&m(&[&[1], &[1]]), &m(&[&[2], &[2]]), FactorSide::Left).unwrap();
        assert_eq!(sol.solution, m(&[&[2]]));
        assert_eq!(sol.kernel_dim, 0);

        assert!(matches!(
            solve_factor(&m(&[&[1], &[1]]), &m(&[&[1], &[2]]), FactorSide::Left),
            Err(crate::Error::NoSolution(_))
        ));
    }

    fn small_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = RationalMatrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-2i64..=2, r * c)
                .prop_map(move |v| RationalMatrix::from_vec(r, c, v.into_iter().map(Rational::from).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in small_matrix(5, 5)) {
            prop_assert_eq!(kernel(&a).dim() + rank(&a), a.cols());
        }

        #[test]
        fn modular_dimension_identity(a in small_matrix(4, 3), b in small_matrix(4, 3)) {
            prop_assume!(a.rows() == b.rows());
            let (sa, sb) = (image(&a), image(&b));
            let meet = sa.intersect(&sb).unwrap();
            let join = sa.sum(&sb).unwrap();
            prop_assert_eq!(sa.dim() + sb.dim(), meet.dim() + join.dim());
            prop_assert!(sa.contains(&meet).unwrap() && sb.contains(&meet).unwrap());
            prop_assert!(join.contains(&sa).unwrap() && join.contains(&sb).unwrap());
        }

        #[test]
        fn canonical_form_is_idempotent_and_basis_independent(a in small_matrix(4, 4), t in small_matrix(4, 4)) {
            let s = image(&a);
            prop_assert_eq!(&Subspace::from_spanning(s.basis()).unwrap(), &s);
            // a·t spans a subspace of col(a); when t is invertible it is the same span
            if t.is_square() && a.cols() == t.rows() && rank(&t) == t.rows() {
                prop_assert_eq!(image(&a.mul(&t).unwrap()), s);
            }
        }

        #[test]
        fn preimage_laws(a in small_matrix(4, 4)) {
            prop_assert_eq!(preimage_subspace(&a, &image(&a)).unwrap(), Subspace::full(a.cols()));
            prop_assert_eq!(preimage_subspace(&a, &Subspace::zero(a.rows())).unwrap(), kernel(&a));
        }
    }
}
