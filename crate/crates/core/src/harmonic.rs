//! Harmonic generators `f_k = Re (x+iy)^k`, `g_k = Im (x+iy)^k` and the
//! decompositions built from them.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Degree, Monomial, Polynomial};
use crate::scalar::Scalar;

/// `f_k` and `g_k` for some `k >= 1`. Together they span the homogeneous
/// harmonic polynomials of degree `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPair<C = BigRational> {
    pub k: Degree,
    pub f: Polynomial<C>,
    pub g: Polynomial<C>,
}

/// `(Re (x+iy)^k, Im (x+iy)^k)`, including `k = 0` as `(1, 0)`.
///
/// Built by `f_{j+1} = x f_j - y g_j`, `g_{j+1} = x g_j + y f_j`.
pub fn re_im_power<C: Scalar>(k: Degree) -> (Polynomial<C>, Polynomial<C>) {
    let x = Polynomial::<C>::x();
    let y = Polynomial::<C>::y();
    let mut f = Polynomial::one();
    let mut g = Polynomial::zero();
    for _ in 0..k {
        let next_f = &x * &f - &y * &g;
        let next_g = &x * &g + &y * &f;
        f = next_f;
        g = next_g;
    }
    (f, g)
}

pub fn harmonic_pair<C: Scalar>(k: Degree) -> Result<HarmonicPair<C>> {
    if k == 0 {
        return Err(Error::Precondition("harmonic pair needs k >= 1".into()));
    }
    let (f, g) = re_im_power(k);
    Ok(HarmonicPair { k, f, g })
}

/// Basis of the degree-`k` harmonic space: `[f_k, g_k]`, or `[1]` for `k = 0`.
pub fn harmonic_basis<C: Scalar>(k: Degree) -> Vec<Polynomial<C>> {
    let (f, g) = re_im_power(k);
    if k == 0 {
        vec![f]
    } else {
        vec![f, g]
    }
}

/// Writes a degree-`k` harmonic `h` as `a f_k + b g_k`.
pub fn harmonic_coords<C: Scalar>(h: &Polynomial<C>, k: Degree) -> Option<(C, C)> {
    if k == 0 {
        return h
            .is_homogeneous_of(0)
            .then(|| (h.constant_term(), C::zero()));
    }
    let a = h.coeff(Monomial::new(k, 0));
    let b = h.coeff(Monomial::new(k - 1, 1)) / C::from_int(i64::from(k));
    let (f, g) = re_im_power::<C>(k);
    let rebuilt = f.scale(&a) + g.scale(&b);
    (&rebuilt - h).is_zero().then_some((a, b))
}

/// Outcome of checking the product identities for `1 <= s <= k`:
///
/// * `f_s r^{2(k-s)} = f_k f_{k-s} + g_k g_{k-s}`
/// * `g_s r^{2(k-s)} = g_k f_{k-s} + f_k g_{k-s}` (false in general)
/// * `g_s r^{2(k-s)} = g_k f_{k-s} - f_k g_{k-s}` (imaginary part of `z^k conj(z)^{k-s}`)
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductIdentityReport {
    pub s: Degree,
    pub k: Degree,
    pub first: bool,
    pub plus_sign: bool,
    pub minus_sign: bool,
}

pub fn check_product_identity(s: Degree, k: Degree) -> Result<ProductIdentityReport> {
    if s == 0 || s > k {
        return Err(Error::Precondition(format!(
            "need 1 <= s <= k, got s={s}, k={k}"
        )));
    }
    let (fs, gs) = re_im_power::<BigRational>(s);
    let (fk, gk) = re_im_power::<BigRational>(k);
    let (fd, gd) = re_im_power::<BigRational>(k - s);
    let radial = Polynomial::r_squared().pow(k - s);
    let lhs_f = &fs * &radial;
    let lhs_g = &gs * &radial;
    let cross_a = &gk * &fd;
    let cross_b = &fk * &gd;
    Ok(ProductIdentityReport {
        s,
        k,
        first: lhs_f == &fk * &fd + &gk * &gd,
        plus_sign: lhs_g == &cross_a + &cross_b,
        minus_sign: lhs_g == &cross_a - &cross_b,
    })
}

fn require_homogeneous<C: Scalar>(p: &Polynomial<C>) -> Result<Option<Degree>> {
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(p.degree())
}

/// Splits a homogeneous `p` of degree `k` as `h + r^2 q` with `h` harmonic
/// of degree `k` and `q` of degree `k - 2`. Degrees below 2 are already
/// harmonic and give `q = 0`.
pub fn harmonic_split<C: Scalar>(p: &Polynomial<C>) -> Result<(Polynomial<C>, Polynomial<C>)> {
    let Some(k) = require_homogeneous(p)? else {
        return Ok((Polynomial::zero(), Polynomial::zero()));
    };
    if k < 2 {
        return Ok((p.clone(), Polynomial::zero()));
    }
    let harmonic = harmonic_basis::<C>(k);
    let r2 = Polynomial::<C>::r_squared();
    let radial: Vec<Polynomial<C>> = Monomial::basis(k - 2).map(|m| r2.mul_monomial(m)).collect();
    let generators: Vec<&Polynomial<C>> = harmonic.iter().chain(&radial).collect();
    let solution = solve_combination(&generators, p, k)
        .ok_or_else(|| Error::Verification("harmonic split has no solution".into()))?;
    let (hc, qc) = solution.split_at(harmonic.len());
    let h = combine(&harmonic, hc);
    let q = Polynomial::from_coords(k - 2, qc);
    Ok((h, q))
}

/// `sum_j r^{2j} h_j` with each `h_j` harmonic and homogeneous of degree
/// `degree - 2j` (zero when that degree is negative).
#[derive(Debug, Clone, PartialEq)]
pub struct AlmansiDecomposition<C = BigRational> {
    pub degree: Degree,
    pub s: Degree,
    pub components: Vec<Polynomial<C>>,
}

impl<C: Scalar> AlmansiDecomposition<C> {
    pub fn reconstruct(&self) -> Polynomial<C> {
        let r2 = Polynomial::<C>::r_squared();
        let mut out = Polynomial::zero();
        let mut radial = Polynomial::one();
        for h in &self.components {
            out += &(&radial * h);
            radial = &radial * &r2;
        }
        out
    }
}

/// Almansi decomposition of a homogeneous `u` with `laplacian^s u = 0`.
///
/// Pass `degree` explicitly so that `u = 0` has a well-defined shape.
pub fn almansi<C: Scalar>(
    u: &Polynomial<C>,
    degree: Degree,
    s: Degree,
) -> Result<AlmansiDecomposition<C>> {
    if !u.is_homogeneous_of(degree) {
        return Err(if u.is_homogeneous() {
            Error::DegreeMismatch {
                expected: degree,
                found: u.degree().unwrap_or(0),
            }
        } else {
            Error::NotHomogeneous
        });
    }
    let residual = u.laplacian_pow(s);
    if !residual.is_zero() {
        return Err(Error::KernelViolation {
            degree,
            power: s,
            residual: residual.to_string(),
        });
    }
    let r2 = Polynomial::<C>::r_squared();
    let mut generators = Vec::new();
    let mut owners = Vec::new();
    let mut radial = Polynomial::<C>::one();
    for j in 0..s {
        if 2 * j > degree {
            break;
        }
        for h in harmonic_basis::<C>(degree - 2 * j) {
            generators.push(&radial * &h);
            owners.push((j, h));
        }
        radial = &radial * &r2;
    }
    let refs: Vec<&Polynomial<C>> = generators.iter().collect();
    let coeffs = solve_combination(&refs, u, degree)
        .ok_or_else(|| Error::Verification("polyharmonic input outside the Almansi span".into()))?;
    let mut components = vec![Polynomial::zero(); s as usize];
    for ((j, h), c) in owners.iter().zip(&coeffs) {
        components[*j as usize] += &h.scale(c);
    }
    Ok(AlmansiDecomposition {
        degree,
        s,
        components,
    })
}

/// Coefficients `c` with `sum c_i gen_i = target`, all in degree `d`.
pub(crate) fn solve_combination<C: Scalar>(
    generators: &[&Polynomial<C>],
    target: &Polynomial<C>,
    d: Degree,
) -> Option<Vec<C>> {
    let columns: Vec<Vec<C>> = generators.iter().map(|g| g.coords(d)).collect();
    let a = Matrix::from_rows(columns, d as usize + 1).transpose();
    a.solve(&target.coords(d))
}

fn combine<C: Scalar>(basis: &[Polynomial<C>], coeffs: &[C]) -> Polynomial<C> {
    let mut out = Polynomial::zero();
    for (b, c) in basis.iter().zip(coeffs) {
        out += &b.scale(c);
    }
    out
}
