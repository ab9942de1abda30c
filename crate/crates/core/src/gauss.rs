//! k-th roots of Gaussian rationals: exact when one exists, otherwise a
//! dyadic approximation refined by Newton's method.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::GaussRational;

/// Precision used when searching for an exact root.
const DETECTION_BITS: u32 = 256;

fn dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (q * BigRational::from_integer(scale.clone())).round();
    scaled / BigRational::from_integer(scale)
}

fn dyadic_complex(c: &GaussRational, bits: u32) -> GaussRational {
    Complex::new(dyadic(&c.re, bits), dyadic(&c.im, bits))
}

/// The rational with the smallest denominator in `[lo, hi]`.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    let zero = BigRational::zero();
    if *lo <= zero && zero <= *hi {
        return zero;
    }
    if *hi < zero {
        return -simplest_between(&-hi, &-lo);
    }
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    // Continued-fraction expansion, carried as the convergent pair.
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    loop {
        let fl = lo.floor();
        let a = fl.to_integer();
        if fl == lo || fl.clone() + BigRational::one() <= hi {
            let a = if fl == lo { a } else { a + 1 };
            let p = &a * &p0 + &p1;
            let q = &a * &q0 + &q1;
            return BigRational::new(p, q);
        }
        let p = &a * &p0 + &p1;
        let q = &a * &q0 + &q1;
        p1 = std::mem::replace(&mut p0, p);
        q1 = std::mem::replace(&mut q0, q);
        let next_lo = (hi.clone() - fl.clone()).recip();
        let next_hi = (lo.clone() - fl).recip();
        lo = next_lo;
        hi = next_hi;
    }
}

fn seed(t: &GaussRational, k: u32, branch: u32) -> Option<GaussRational> {
    let re = t.re.to_f64()?;
    let im = t.im.to_f64()?;
    let modulus = re.hypot(im);
    if !modulus.is_finite() || modulus == 0.0 {
        return None;
    }
    let radius = modulus.powf(1.0 / f64::from(k));
    let angle = (im.atan2(re) + 2.0 * PI * f64::from(branch)) / f64::from(k);
    Some(Complex::new(
        BigRational::from_float(radius * angle.cos())?,
        BigRational::from_float(radius * angle.sin())?,
    ))
}

/// Approximates the `branch`-th k-th root of `t` (branch 0 is principal)
/// to `bits` fractional bits. `None` if `t` is zero or out of `f64` range.
pub fn approx_kth_root(t: &GaussRational, k: u32, branch: u32, bits: u32) -> Option<GaussRational> {
    if k == 0 || t.is_zero() {
        return None;
    }
    let mut c = dyadic_complex(&seed(t, k, branch)?, bits);
    let kk = Complex::new(BigRational::from_integer(k.into()), BigRational::zero());
    for _ in 0..64 {
        let denom = kk.clone() * c.powu(k - 1);
        if denom.is_zero() {
            return None;
        }
        let next = dyadic_complex(&(c.clone() - (c.powu(k) - t.clone()) / denom), bits);
        if next == c {
            break;
        }
        c = next;
    }
    Some(c)
}

/// A Gaussian rational `c` with `c^k = t`, trying the principal branch
/// first. Finds every root whose parts have denominators below `2^63`.
pub fn exact_kth_root(t: &GaussRational, k: u32) -> Option<GaussRational> {
    if k == 0 || t.is_zero() {
        return None;
    }
    let eps = BigRational::new(BigInt::one(), BigInt::one() << (DETECTION_BITS / 2));
    (0..k).find_map(|branch| {
        let c = approx_kth_root(t, k, branch, DETECTION_BITS)?;
        let snap = |q: &BigRational| simplest_between(&(q - &eps), &(q + &eps));
        let candidate = Complex::new(snap(&c.re), snap(&c.im));
        (candidate.powu(k) == *t).then_some(candidate)
    })
}

/// Largest absolute value among the real and imaginary parts.
pub fn max_abs_part(c: &GaussRational) -> BigRational {
    c.re.abs().max(c.im.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn g(re: BigRational, im: BigRational) -> GaussRational {
        Complex::new(re, im)
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(1, 2)), ratio(1, 2));
        assert_eq!(simplest_between(&ratio(-3, 2), &ratio(-1, 2)), rat(-1));
        assert_eq!(simplest_between(&ratio(-1, 2), &ratio(1, 2)), rat(0));
        assert_eq!(
            simplest_between(&ratio(31, 100), &ratio(32, 100)),
            ratio(5, 16)
        );
        assert_eq!(simplest_between(&ratio(22, 7), &ratio(22, 7)), ratio(22, 7));
    }

    #[test]
    fn exact_roots() {
        let i = g(rat(0), rat(1));
        assert_eq!(exact_kth_root(&g(rat(-1), rat(0)), 2), Some(i.clone()));
        assert_eq!(
            exact_kth_root(&g(rat(-4), rat(0)), 4),
            Some(g(rat(1), rat(1)))
        );
        let c = g(ratio(3, 7), ratio(-2, 5));
        assert_eq!(exact_kth_root(&c.powu(5), 5).unwrap().powu(5), c.powu(5));
        assert_eq!(
            exact_kth_root(&g(rat(1), rat(0)), 3),
            Some(g(rat(1), rat(0)))
        );
    }

    #[test]
    fn irrational_roots() {
        assert_eq!(exact_kth_root(&g(rat(0), rat(1)), 2), None);
        assert_eq!(exact_kth_root(&g(rat(2), rat(0)), 2), None);
        let c = approx_kth_root(&g(rat(0), rat(1)), 2, 0, 200).unwrap();
        let err = max_abs_part(&(c.powu(2) - g(rat(0), rat(1))));
        assert!(err < BigRational::new(BigInt::one(), BigInt::one() << 190u32));
    }
}
