//! Linear algebra on the graded pieces `P_d` (homogeneous polynomials of
//! degree `d`, coordinates in the basis `x^d, x^(d-1)*y, ..., y^d`).
//!
//! Subspaces are kept in reduced row-echelon form, so two subspaces are
//! equal exactly when their stored bases are equal.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::harmonic::{harmonic_basis, re_im_power};
use crate::linalg::{reduce_against, rref, Matrix};
use crate::poly::{Degree, Monomial, Polynomial};
use crate::scalar::Scalar;

/// Set relation between two subspaces of the same `P_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// The first subspace is strictly contained in the second.
    AInB,
    /// The second subspace is strictly contained in the first.
    BInA,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<C = BigRational> {
    degree: Degree,
    rows: Vec<Vec<C>>,
    pivots: Vec<usize>,
}

impl<C: Scalar> Subspace<C> {
    /// Span of arbitrary polynomials; only their degree-`degree` parts count.
    pub fn span<'a, I>(degree: Degree, polys: I) -> Self
    where
        I: IntoIterator<Item = &'a Polynomial<C>>,
    {
        let rows = polys.into_iter().map(|p| p.coords(degree)).collect();
        Self::from_coord_rows(degree, rows)
    }

    pub fn from_coord_rows(degree: Degree, rows: Vec<Vec<C>>) -> Self {
        let (rows, pivots) = rref(rows, degree as usize + 1);
        Subspace {
            degree,
            rows,
            pivots,
        }
    }

    pub fn full(degree: Degree) -> Self {
        let basis: Vec<Polynomial<C>> = Monomial::basis(degree)
            .map(|m| Polynomial::monomial(C::one(), m.x, m.y))
            .collect();
        Self::span(degree, &basis)
    }

    pub fn zero(degree: Degree) -> Self {
        Subspace {
            degree,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.degree as usize + 1
    }

    pub fn basis(&self) -> Vec<Polynomial<C>> {
        self.rows
            .iter()
            .map(|r| Polynomial::from_coords(self.degree, r))
            .collect()
    }

    /// Coordinate rows of the RREF basis.
    pub fn rows(&self) -> &[Vec<C>] {
        &self.rows
    }

    pub fn contains(&self, p: &Polynomial<C>) -> bool {
        if !p.is_homogeneous_of(self.degree) {
            return false;
        }
        reduce_against(&self.rows, &self.pivots, &p.coords(self.degree))
            .iter()
            .all(|c| c.is_negligible())
    }

    pub fn contains_subspace(&self, other: &Subspace<C>) -> bool {
        other.degree == self.degree && other.basis().iter().all(|b| self.contains(b))
    }

    pub fn compare(&self, other: &Subspace<C>) -> Result<Relation> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let a_in_b = other.contains_subspace(self);
        let b_in_a = self.contains_subspace(other);
        Ok(match (a_in_b, b_in_a) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::AInB,
            (false, true) => Relation::BInA,
            (false, false) => Relation::Incomparable,
        })
    }
}

/// Matrix of `laplacian^s : P_k -> P_{k-2s}` in monomial bases. When
/// `k < 2s` the target is the zero space and the matrix has no rows.
pub fn laplacian_matrix<C: Scalar>(k: Degree, s: Degree) -> Matrix<C> {
    let cols = k as usize + 1;
    if k < 2 * s {
        return Matrix::zeros(0, cols);
    }
    let target = k - 2 * s;
    let columns: Vec<Vec<C>> = Monomial::basis(k)
        .map(|m| {
            Polynomial::<C>::monomial(C::one(), m.x, m.y)
                .laplacian_pow(s)
                .coords(target)
        })
        .collect();
    Matrix::from_rows(columns, target as usize + 1).transpose()
}

/// Kernel of `laplacian^s` on `P_k`. Its dimension is `min(2s, k+1)`.
pub fn kernel_basis<C: Scalar>(k: Degree, s: Degree) -> Subspace<C> {
    let a = laplacian_matrix::<C>(k, s);
    Subspace::from_coord_rows(k, a.nullspace())
}

/// `P_s * H_k`: span of `x^a y^b f_k` and `x^a y^b g_k` with `a + b = s`.
/// `k = 0` uses `H_0 = span{1}`.
pub fn product_space<C: Scalar>(s: Degree, k: Degree) -> Subspace<C> {
    let harmonic = harmonic_basis::<C>(k);
    let generators: Vec<Polynomial<C>> = Monomial::basis(s)
        .flat_map(|m| harmonic.iter().map(move |h| h.mul_monomial(m)))
        .collect();
    Subspace::span(s + k, &generators)
}

/// `sum_{j < count} r^{2j} H_{d-2j}` inside `P_d`.
pub fn radial_harmonic_span<C: Scalar>(d: Degree, count: Degree) -> Subspace<C> {
    let r2 = Polynomial::<C>::r_squared();
    let mut generators = Vec::new();
    let mut radial = Polynomial::<C>::one();
    for j in 0..count {
        if 2 * j > d {
            break;
        }
        for h in harmonic_basis::<C>(d - 2 * j) {
            generators.push(&radial * &h);
        }
        radial = &radial * &r2;
    }
    Subspace::span(d, &generators)
}

/// Finds `u, v` in `P_s` with `target = u a + v b`, where `a, b` are
/// homogeneous of degree `d` and `target` of degree `d + s`.
///
/// Unknowns are ordered as the coordinates of `u` then `v`; free unknowns
/// are zero.
pub fn solve_pair<C: Scalar>(
    target: &Polynomial<C>,
    a: &Polynomial<C>,
    b: &Polynomial<C>,
    d: Degree,
    s: Degree,
) -> Option<(Polynomial<C>, Polynomial<C>)> {
    let total = d + s;
    if !target.is_homogeneous_of(total) {
        return None;
    }
    let columns: Vec<Vec<C>> = [a, b]
        .iter()
        .flat_map(|g| Monomial::basis(s).map(move |m| g.mul_monomial(m).coords(total)))
        .collect();
    let system = Matrix::from_rows(columns, total as usize + 1).transpose();
    let sol = system.solve(&target.coords(total))?;
    let (uc, vc) = sol.split_at(s as usize + 1);
    Some((
        Polynomial::from_coords(s, uc),
        Polynomial::from_coords(s, vc),
    ))
}

/// Finds `u, v` in `P_s` with `target = u f_k + v g_k`, or `None` when the
/// target is outside `P_s * H_k`.
pub fn solve_membership<C: Scalar>(
    target: &Polynomial<C>,
    k: Degree,
    s: Degree,
) -> Option<(Polynomial<C>, Polynomial<C>)> {
    let (f, g) = re_im_power::<C>(k);
    solve_pair(target, &f, &g, k, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::harmonic_pair;
    use crate::scalar::rat;
    use crate::{GradedSubspace, Poly};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn laplacian_matrix_examples() {
        let m = laplacian_matrix::<BigRational>(2, 1);
        assert_eq!(m.rows(), 1);
        assert_eq!(m.row(0), &[rat(2), rat(0), rat(2)]);
        let m = laplacian_matrix::<BigRational>(4, 2);
        assert_eq!(m.row(0), &[rat(24), rat(0), rat(8), rat(0), rat(24)]);
        let m = laplacian_matrix::<BigRational>(3, 2);
        assert_eq!((m.rows(), m.cols()), (0, 4));
    }

    #[test]
    fn kernel_examples() {
        let h4: GradedSubspace = kernel_basis(4, 1);
        assert_eq!(h4.dim(), 2);
        let pair = harmonic_pair::<BigRational>(4).unwrap();
        assert!(h4.contains(&pair.f) && h4.contains(&pair.g));
        assert_eq!(kernel_basis::<BigRational>(4, 2).dim(), 4);
        let all: GradedSubspace = kernel_basis(3, 2);
        assert!(all.is_full());
        assert_eq!(all, Subspace::full(3));
    }

    #[test]
    fn product_space_examples() {
        assert!(product_space::<BigRational>(1, 1).is_full());
        let a: GradedSubspace = product_space(1, 3);
        assert_eq!(a.dim(), 4);
        assert_eq!(a, kernel_basis(4, 2));
        let b: GradedSubspace = product_space(2, 2);
        assert_eq!(b, Subspace::full(4));
    }

    #[test]
    fn compare_examples() {
        let h4: GradedSubspace = Subspace::span(4, &harmonic_basis(4));
        assert_eq!(h4.compare(&kernel_basis(4, 1)).unwrap(), Relation::Equal);
        assert_eq!(h4.compare(&kernel_basis(4, 2)).unwrap(), Relation::AInB);
        assert_eq!(
            kernel_basis::<BigRational>(4, 2).compare(&h4).unwrap(),
            Relation::BInA
        );
        let a: GradedSubspace = Subspace::span(2, &[p("x^2")]);
        let b: GradedSubspace = Subspace::span(2, &[p("y^2")]);
        assert_eq!(a.compare(&b).unwrap(), Relation::Incomparable);
        assert!(a.compare(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn membership_examples() {
        let f4 = harmonic_pair::<BigRational>(4).unwrap().f;
        let (u, v) = solve_membership(&(&p("x") * &f4), 4, 1).unwrap();
        assert_eq!((u, v), (p("x"), Poly::zero()));

        let target = &p("x") * &Poly::r_squared().pow(2);
        let pair2 = harmonic_pair::<BigRational>(2).unwrap();
        let (u, v) = solve_membership(&target, 3, 2).unwrap();
        assert_eq!((u, v), (pair2.f, pair2.g));

        assert!(solve_membership(&p("x^4"), 3, 2).is_none());
        assert!(solve_membership(&p("x^5"), 4, 1).is_none());
    }

    #[test]
    fn float_kernel_dimensions() {
        for k in 1..=8 {
            for s in 1..=4 {
                let dim = kernel_basis::<f64>(k, s).dim();
                assert_eq!(dim, (2 * s).min(k + 1) as usize, "k={k} s={s}");
            }
        }
    }
}
