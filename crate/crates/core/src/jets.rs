//! Germs modulo `m^{bound+1}` and coordinate changes between them.
//!
//! Every product is truncated as soon as it is formed. Complex intermediate
//! values use `Complex<C>` coefficients and are split back into real and
//! imaginary parts before leaving this module.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Degree, Monomial, Polynomial};
use crate::scalar::Scalar;

/// A polynomial read modulo `m^{bound+1}`; no stored term exceeds `bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet<C = BigRational> {
    poly: Polynomial<C>,
    bound: Degree,
}

impl<C: Scalar> Jet<C> {
    /// Truncating constructor.
    pub fn new(poly: &Polynomial<C>, bound: Degree) -> Self {
        Jet {
            poly: poly.truncate(bound),
            bound,
        }
    }

    pub fn poly(&self) -> &Polynomial<C> {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial<C> {
        self.poly
    }

    pub fn bound(&self) -> Degree {
        self.bound
    }

    fn check_bound(&self, other: &Jet<C>) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch {
                left: self.bound,
                right: other.bound,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Jet<C>) -> Result<Jet<C>> {
        self.check_bound(other)?;
        Ok(Jet {
            poly: &self.poly + &other.poly,
            bound: self.bound,
        })
    }

    pub fn sub(&self, other: &Jet<C>) -> Result<Jet<C>> {
        self.check_bound(other)?;
        Ok(Jet {
            poly: &self.poly - &other.poly,
            bound: self.bound,
        })
    }

    pub fn mul(&self, other: &Jet<C>) -> Result<Jet<C>> {
        self.check_bound(other)?;
        Ok(Jet {
            poly: self.poly.mul_truncated(&other.poly, self.bound),
            bound: self.bound,
        })
    }
}

/// Drops all terms of degree above `bound`.
pub fn jet_truncate<C: Scalar>(p: &Polynomial<C>, bound: Degree) -> Jet<C> {
    Jet::new(p, bound)
}

/// A diffeomorphism germ `(x, y) -> (first, second)` fixing the origin,
/// known up to degree `bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct JetMap<C = BigRational> {
    first: Polynomial<C>,
    second: Polynomial<C>,
    bound: Degree,
}

impl<C: Scalar> JetMap<C> {
    /// Rejects maps that move the origin or have a singular linear part.
    pub fn new(first: &Polynomial<C>, second: &Polynomial<C>, bound: Degree) -> Result<Self> {
        let map = JetMap {
            first: first.truncate(bound),
            second: second.truncate(bound),
            bound,
        };
        if !map.first.constant_term().is_negligible() || !map.second.constant_term().is_negligible()
        {
            return Err(Error::NotDiffeomorphism("constant term must vanish"));
        }
        let [a, b, c, d] = map.linear_part();
        if (a * d - b * c).is_negligible() {
            return Err(Error::NotDiffeomorphism("linear part is singular"));
        }
        Ok(map)
    }

    pub fn identity(bound: Degree) -> Self {
        JetMap {
            first: Polynomial::x(),
            second: Polynomial::y(),
            bound,
        }
    }

    /// `(x + u, y + v)`; `u` and `v` must have order at least 2.
    pub fn translation(u: &Polynomial<C>, v: &Polynomial<C>, bound: Degree) -> Result<Self> {
        if !u.order().at_least(2) || !v.order().at_least(2) {
            return Err(Error::Precondition(
                "translation terms must have order >= 2".into(),
            ));
        }
        Self::new(&(Polynomial::x() + u), &(Polynomial::y() + v), bound)
    }

    pub fn first(&self) -> &Polynomial<C> {
        &self.first
    }

    pub fn second(&self) -> &Polynomial<C> {
        &self.second
    }

    pub fn bound(&self) -> Degree {
        self.bound
    }

    pub fn is_identity(&self) -> bool {
        self.first == Polynomial::x() && self.second == Polynomial::y()
    }

    /// Row-major `[dx/dx, dx/dy, dy/dx, dy/dy]` at the origin.
    pub fn linear_part(&self) -> [C; 4] {
        let x = Monomial::new(1, 0);
        let y = Monomial::new(0, 1);
        [
            self.first.coeff(x),
            self.first.coeff(y),
            self.second.coeff(x),
            self.second.coeff(y),
        ]
    }

    /// Same map read modulo a different bound.
    pub fn with_bound(&self, bound: Degree) -> Self {
        JetMap {
            first: self.first.truncate(bound),
            second: self.second.truncate(bound),
            bound,
        }
    }
}

/// `h(first, second)`, truncated at the common bound.
pub fn jet_compose<C: Scalar>(h: &Jet<C>, map: &JetMap<C>) -> Result<Jet<C>> {
    if h.bound != map.bound {
        return Err(Error::BoundMismatch {
            left: h.bound,
            right: map.bound,
        });
    }
    let poly = h
        .poly
        .substitute_truncated(&map.first, &map.second, h.bound);
    Ok(Jet {
        poly,
        bound: h.bound,
    })
}

/// `outer ∘ inner`, i.e. `p -> outer(inner(p))`.
pub fn jet_map_compose<C: Scalar>(outer: &JetMap<C>, inner: &JetMap<C>) -> Result<JetMap<C>> {
    if outer.bound != inner.bound {
        return Err(Error::BoundMismatch {
            left: outer.bound,
            right: inner.bound,
        });
    }
    let b = outer.bound;
    let first = outer
        .first
        .substitute_truncated(&inner.first, &inner.second, b);
    let second = outer
        .second
        .substitute_truncated(&inner.first, &inner.second, b);
    JetMap::new(&first, &second, b)
}

/// `true` iff `h1 - h2` lies in `m^{k+1}`.
pub fn jets_equivalent_mod<C: Scalar>(h1: &Jet<C>, h2: &Jet<C>, k: Degree) -> Result<bool> {
    for h in [h1, h2] {
        if h.bound < k {
            return Err(Error::InsufficientBound {
                bound: h.bound,
                level: k,
            });
        }
    }
    Ok((&h1.poly - &h2.poly).truncate(k).is_zero())
}

/// The jet `r` with constant term 1 and `r^k = 1 + w`, from the binomial
/// series with exponent `1/k`.
pub fn jet_root<C: Scalar>(w: &Jet<C>, k: Degree) -> Result<Jet<C>> {
    if k == 0 {
        return Err(Error::Precondition("root index must be >= 1".into()));
    }
    if !w.poly.constant_term().is_negligible() {
        return Err(Error::Precondition(
            "root argument must have zero constant term".into(),
        ));
    }
    let bound = w.bound;
    let exponent = BigRational::new(1.into(), k.into());
    let mut coeff = BigRational::one();
    let mut power = Polynomial::<C>::one();
    let mut out = Polynomial::<C>::one();
    // w^n has order >= n, so the series stops at n = bound.
    for n in 1..=bound {
        coeff = coeff * (&exponent - BigRational::from_integer((n - 1).into()))
            / BigRational::from_integer(n.into());
        power = power.mul_truncated(&w.poly, bound);
        if power.is_zero() {
            break;
        }
        out += &power.scale(&C::from_rational(&coeff));
    }
    Ok(Jet { poly: out, bound })
}

pub(crate) fn complexify<C: Scalar>(p: &Polynomial<C>) -> Polynomial<Complex<C>>
where
    Complex<C>: Scalar,
{
    p.map_coeffs(|c| Complex::new(c.clone(), C::zero()))
}

/// `(Re p, Im p)`.
pub(crate) fn split_complex<C: Scalar>(p: &Polynomial<Complex<C>>) -> (Polynomial<C>, Polynomial<C>)
where
    Complex<C>: Scalar,
{
    let mut re = Polynomial::zero();
    let mut im = Polynomial::zero();
    for (m, c) in p.terms() {
        re.add_term(m, c.re.clone());
        im.add_term(m, c.im.clone());
    }
    (re, im)
}

/// `x + i y`.
pub(crate) fn complex_coordinate<C: Scalar>() -> Polynomial<Complex<C>>
where
    Complex<C>: Scalar,
{
    Polynomial::from_terms([
        (Monomial::new(1, 0), Complex::new(C::one(), C::zero())),
        (Monomial::new(0, 1), Complex::new(C::zero(), C::one())),
    ])
}

/// The real map `z -> z * (1 + w)^{1/k}` for a complex jet `w` with zero
/// constant term.
pub fn complex_scale_map<C: Scalar>(w: &Jet<Complex<C>>, k: Degree) -> Result<JetMap<C>>
where
    Complex<C>: Scalar,
{
    let root = jet_root(w, k)?;
    let image = complex_coordinate::<C>().mul_truncated(root.poly(), w.bound);
    let (first, second) = split_complex(&image);
    JetMap::new(&first, &second, w.bound)
}

/// The map `z -> z * (1 + u - i v)^{1/k}`, which satisfies
/// `f_k ∘ φ = f_k + u f_k + v g_k` modulo the bound.
pub fn complexify_scale_map<C: Scalar>(u: &Jet<C>, v: &Jet<C>, k: Degree) -> Result<JetMap<C>>
where
    Complex<C>: Scalar,
{
    if u.bound != v.bound {
        return Err(Error::BoundMismatch {
            left: u.bound,
            right: v.bound,
        });
    }
    if !u.poly.constant_term().is_negligible() || !v.poly.constant_term().is_negligible() {
        return Err(Error::Precondition(
            "u and v must vanish at the origin".into(),
        ));
    }
    let i = Complex::new(C::zero(), C::one());
    let w = complexify(&u.poly) - complexify(&v.poly).scale(&i);
    complex_scale_map(&Jet::new(&w, u.bound), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::re_im_power;
    use crate::Poly;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn jet(s: &str, b: Degree) -> Jet {
        Jet::new(&p(s), b)
    }

    fn map(a: &str, b: &str, bound: Degree) -> JetMap {
        JetMap::new(&p(a), &p(b), bound).unwrap()
    }

    #[test]
    fn truncation() {
        assert_eq!(jet_truncate(&p("x + x^5"), 3).poly(), &p("x"));
        let f5 = re_im_power::<BigRational>(5).0;
        assert_eq!(jet_truncate(&f5, 5).poly(), &f5);
        assert!(jet_truncate(&Poly::zero(), 7).poly().is_zero());
    }

    #[test]
    fn compose_examples() {
        let out = jet_compose(&jet("x^2 - y^2", 3), &map("x + x^2", "y", 3)).unwrap();
        assert_eq!(out.poly(), &p("x^2 - y^2 + 2*x^3"));
        let h = jet("3*x^2*y - x*y + 7*y^3", 4);
        assert_eq!(jet_compose(&h, &JetMap::identity(4)).unwrap(), h);
        let swapped = jet_compose(&jet("x", 2), &map("y", "x", 2)).unwrap();
        assert_eq!(swapped.poly(), &p("y"));
        assert!(jet_compose(&jet("x", 2), &JetMap::identity(3)).is_err());
    }

    #[test]
    fn map_compose_examples() {
        let phi = map("x + x^2 - y^3", "y + x*y", 4);
        assert_eq!(jet_map_compose(&phi, &JetMap::identity(4)).unwrap(), phi);
        let a = map("x + x^2", "y", 2);
        let b = map("x - x^2", "y", 2);
        assert!(jet_map_compose(&a, &b).unwrap().is_identity());
        let swap = map("y", "x", 5);
        assert!(jet_map_compose(&swap, &swap).unwrap().is_identity());
    }

    #[test]
    fn map_validation() {
        assert!(JetMap::new(&p("1 + x"), &p("y"), 3).is_err());
        assert!(JetMap::new(&p("x + y"), &p("2*x + 2*y"), 3).is_err());
        assert!(JetMap::translation(&p("x"), &Poly::zero(), 3).is_err());
    }

    #[test]
    fn root_examples() {
        let r = jet_root(&jet("2*x*y", 4), 2).unwrap();
        assert_eq!(r.poly(), &p("1 + x*y - 1/2*x^2*y^2"));
        assert_eq!(jet_root(&jet("0", 6), 5).unwrap().poly(), &p("1"));
        assert_eq!(jet_root(&jet("x", 3), 1).unwrap().poly(), &p("1 + x"));
        assert!(jet_root(&jet("1 + x", 3), 2).is_err());
    }

    #[test]
    fn equivalence_examples() {
        assert!(jets_equivalent_mod(&jet("x^2 + x^5", 5), &jet("x^2", 5), 4).unwrap());
        assert!(!jets_equivalent_mod(&jet("x^2", 2), &jet("y^2", 2), 2).unwrap());
        let f5 = re_im_power::<BigRational>(5).0;
        let a = Jet::new(&(&f5 + &p("x^8")), 8);
        assert!(jets_equivalent_mod(&a, &Jet::new(&f5, 8), 7).unwrap());
        assert!(jets_equivalent_mod(&jet("x", 3), &jet("x", 3), 4).is_err());
    }

    #[test]
    fn scale_map_examples() {
        let (f6, _) = re_im_power::<BigRational>(6);
        let phi = complexify_scale_map(&jet("x", 7), &jet("0", 7), 6).unwrap();
        let out = jet_compose(&Jet::new(&f6, 7), &phi).unwrap();
        assert!(jets_equivalent_mod(&out, &Jet::new(&(&f6 + &(&p("x") * &f6)), 7), 7).unwrap());

        assert!(complexify_scale_map(&jet("0", 5), &jet("0", 5), 4)
            .unwrap()
            .is_identity());

        let (f5, g5) = re_im_power::<BigRational>(5);
        let phi = complexify_scale_map(&jet("0", 6), &jet("y", 6), 5).unwrap();
        let out = jet_compose(&Jet::new(&f5, 6), &phi).unwrap();
        assert_eq!(out.poly(), &(&f5 + &(&p("y") * &g5)).truncate(6));
    }
}
