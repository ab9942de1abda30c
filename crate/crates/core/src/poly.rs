//! Sparse bivariate polynomials.
//!
//! A [`Polynomial`] is a map from exponent pairs to nonzero coefficients.
//! Storage order is graded: total degree first, then the power of `x`.
//! [`Polynomial::terms`] walks it backwards, which is the printing order
//! (highest degree first, `x^5` before `x^4*y`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Total degree, or an exponent.
pub type Degree = u32;

/// Order of a germ: the lowest total degree carrying a nonzero term.
///
/// The zero polynomial has [`Order::Infinite`], which compares above every
/// finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(Degree),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<Degree> {
        match self {
            Order::Finite(d) => Some(d),
            Order::Infinite => None,
        }
    }

    /// `true` when the germ lies in `m^d`.
    pub fn at_least(self, d: Degree) -> bool {
        self >= Order::Finite(d)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(d) => write!(f, "{d}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// `x^x * y^y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: Degree,
    pub y: Degree,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: Degree, y: Degree) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> Degree {
        self.x + self.y
    }

    /// Monomial basis of `P_d`, ordered `x^d, x^(d-1)*y, ..., y^d`.
    pub fn basis(d: Degree) -> impl Iterator<Item = Monomial> {
        (0..=d).map(move |j| Monomial::new(d - j, j))
    }

    /// Position of this monomial in [`Monomial::basis`] of its degree.
    pub fn index(self) -> usize {
        self.y as usize
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, e) in [("x", self.x), ("y", self.y)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq)]
pub struct Polynomial<C = BigRational> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    /// `c * x^a * y^b`.
    pub fn monomial(c: C, a: Degree, b: Degree) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(a, b), c);
        p
    }

    /// `x^2 + y^2`.
    pub fn r_squared() -> Self {
        Self::monomial(C::one(), 2, 0) + Self::monomial(C::one(), 0, 2)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_negligible() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_negligible() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in printing order: descending degree, then descending power of `x`.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &C)> + '_ {
        self.terms.iter().rev().map(|(m, c)| (*m, c))
    }

    pub fn constant_term(&self) -> C {
        self.coeff(Monomial::ONE)
    }

    /// Highest total degree present, `None` for zero.
    pub fn degree(&self) -> Option<Degree> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn order(&self) -> Order {
        match self.terms.keys().next() {
            Some(m) => Order::Finite(m.degree()),
            None => Order::Infinite,
        }
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.order().finite() == self.degree()
    }

    /// `Some(d)` if homogeneous and nonzero of degree `d`.
    pub fn homogeneous_degree(&self) -> Option<Degree> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.degree()
        }
    }

    /// `true` if `self` is zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of(&self, d: Degree) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn graded_component(&self, d: Degree) -> Self {
        let lo = Monomial::new(0, d);
        let hi = Monomial::new(d, 0);
        Polynomial {
            terms: self
                .terms
                .range(lo..=hi)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drops every term of degree above `bound`.
    pub fn truncate(&self, bound: Degree) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .take_while(|(m, _)| m.degree() <= bound)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_negligible() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())))
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (*n * m, c.clone()))
                .collect(),
        }
    }

    /// Product truncated at `bound`.
    pub fn mul_truncated(&self, rhs: &Self, bound: Degree) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            if m.degree() > bound {
                break;
            }
            for (n, b) in &rhs.terms {
                if m.degree() + n.degree() > bound {
                    break;
                }
                out.add_term(*m * *n, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self^n` modulo `m^{bound+1}`.
    pub fn pow_truncated(&self, n: u32, bound: Degree) -> Self {
        let base = self.truncate(bound);
        (0..n).fold(Self::one().truncate(bound), |acc, _| {
            acc.mul_truncated(&base, bound)
        })
    }

    pub fn partial(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, shifted) = match var {
                Var::X if m.x > 0 => (m.x, Monomial::new(m.x - 1, m.y)),
                Var::Y if m.y > 0 => (m.y, Monomial::new(m.x, m.y - 1)),
                _ => continue,
            };
            out.add_term(shifted, c.clone() * C::from_int(i64::from(e)));
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        let xx = self.partial(Var::X).partial(Var::X);
        let yy = self.partial(Var::Y).partial(Var::Y);
        xx + yy
    }

    /// Laplacian applied `s` times.
    pub fn laplacian_pow(&self, s: Degree) -> Self {
        let mut p = self.clone();
        for _ in 0..s {
            if p.is_zero() {
                break;
            }
            p = p.laplacian();
        }
        p
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Coordinates of the degree-`d` component in [`Monomial::basis`]`(d)`.
    pub fn coords(&self, d: Degree) -> Vec<C> {
        Monomial::basis(d).map(|m| self.coeff(m)).collect()
    }

    /// Inverse of [`Polynomial::coords`].
    pub fn from_coords(d: Degree, coords: &[C]) -> Self {
        Self::from_terms(Monomial::basis(d).zip(coords.iter().cloned()))
    }

    /// Substitutes `(x, y) -> (sx, sy)`, keeping only degrees `<= bound`.
    pub fn substitute_truncated(&self, sx: &Self, sy: &Self, bound: Degree) -> Self {
        let max_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let powers = |p: &Self, n: Degree| {
            let mut out = Vec::with_capacity(n as usize + 1);
            out.push(Self::one());
            for i in 0..n as usize {
                let next = out[i].mul_truncated(p, bound);
                out.push(next);
            }
            out
        };
        let px = powers(sx, max_x);
        let py = powers(sy, max_y);
        // sum_a sx^a * (sum_b c_ab sy^b): one truncated product per x-power
        let mut by_x: BTreeMap<Degree, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            *by_x.entry(m.x).or_insert_with(Self::zero) += &py[m.y as usize].scale(c);
        }
        let mut out = Self::zero();
        for (a, inner) in &by_x {
            out += &px[*a as usize].mul_truncated(inner, bound);
        }
        out
    }
}

impl<C: fmt::Debug> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Polynomial{")?;
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({},{}):{:?}", m.x, m.y, c)?;
        }
        f.write_str("}")
    }
}

impl<C: Scalar> Zero for Polynomial<C> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for Polynomial<C> {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl<C: Scalar> AddAssign<&Polynomial<C>> for Polynomial<C> {
    fn add_assign(&mut self, rhs: &Polynomial<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<C: Scalar> SubAssign<&Polynomial<C>> for Polynomial<C> {
    fn sub_assign(&mut self, rhs: &Polynomial<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(*m * *n, a.clone() * b.clone());
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign:ident) => {
        impl<C: Scalar> $trait for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl<C: Scalar> $trait for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Scalar> $trait<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Scalar> $trait<Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::Poly;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("x^2 - y^2") * p("x^2 + y^2"), p("x^4 - y^4"));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let q = p("3/2*x*y - 7");
        assert_eq!(&q + &Poly::zero(), q);
        let r = p("x + y") - p("x + y");
        assert!(r.is_zero());
        assert_eq!(r.len(), 0);
    }

    #[test]
    fn partial_derivatives() {
        let f = p("x^3 - 3*x*y^2");
        assert_eq!(f.partial(Var::X), p("3*x^2 - 3*y^2"));
        assert_eq!(f.partial(Var::Y), p("-6*x*y"));
        assert!(Poly::constant(rat(7)).partial(Var::X).is_zero());
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(p("x^4").laplacian(), p("12*x^2"));
        assert_eq!(p("x^2 + y^2").laplacian(), p("4"));
        assert!(p("x^3 - 3*x*y^2").laplacian().is_zero());
    }

    #[test]
    fn graded_components() {
        assert_eq!(p("x^2 + x^3").graded_component(2), p("x^2"));
        assert!(p("x^2 + x^3").graded_component(5).is_zero());
        assert_eq!(p("x^2*y + x*y^2").graded_component(3), p("x^2*y + x*y^2"));
    }

    #[test]
    fn orders() {
        assert_eq!(p("x^3 + y^5").order(), Order::Finite(3));
        assert_eq!(Poly::zero().order(), Order::Infinite);
        assert_eq!(p("x^5 - 10*x^3*y^2 + 5*x*y^4").order(), Order::Finite(5));
        assert!(Order::Infinite > Order::Finite(u32::MAX));
        assert!(Poly::zero().order().at_least(100));
    }

    #[test]
    fn scale_by_constant() {
        assert_eq!(p("x + 2*y").scale(&ratio(1, 2)), p("1/2*x + y"));
        assert!(p("x").scale(&rat(0)).is_zero());
    }

    #[test]
    fn truncation_and_substitution() {
        let h = p("x^2 - y^2");
        let out = h.substitute_truncated(&p("x + x^2"), &p("y"), 3);
        assert_eq!(out, p("x^2 - y^2 + 2*x^3"));
        assert_eq!(p("1 + x + x^2 + x^3").truncate(1), p("1 + x"));
    }

    #[test]
    fn coordinates_round_trip() {
        let q = p("x^3 - 3*x*y^2");
        let c = q.coords(3);
        assert_eq!(c, vec![rat(1), rat(0), rat(-3), rat(0)]);
        assert_eq!(Poly::from_coords(3, &c), q);
    }

    #[test]
    fn float_coefficients() {
        let f: Polynomial<f64> = Polynomial::monomial(1.0, 3, 0) - Polynomial::monomial(3.0, 1, 2);
        assert!(f.laplacian().is_zero());
        assert_eq!(f.partial(Var::Y).coeff(Monomial::new(1, 1)), -6.0);
    }
}
