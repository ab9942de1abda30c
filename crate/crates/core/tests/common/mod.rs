#![allow(dead_code)]

use harmgerm::{Monomial, Poly, Rational};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Sparse polynomials of total degree at most `max_degree`.
pub fn poly(max_degree: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0..=max_degree, 0..=max_degree, rational()), 0..8).prop_map(
        move |terms| {
            let mut p = Poly::zero();
            for (a, b, c) in terms {
                if a + b <= max_degree {
                    p.add_term(Monomial::new(a, b), c);
                }
            }
            p
        },
    )
}

pub fn homogeneous(d: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), (d + 1) as usize).prop_map(move |c| Poly::from_coords(d, &c))
}

/// Binomial coefficient as a rational, computed by the product formula.
pub fn binomial(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::from_integer(1.into()), |acc, i| {
        acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into())
    })
}

/// `Re (x+iy)^k` and `Im (x+iy)^k` expanded by the binomial theorem.
pub fn binomial_pair(k: u32) -> (Poly, Poly) {
    let mut f = Poly::zero();
    let mut g = Poly::zero();
    for j in 0..=k {
        let c = binomial(k, j);
        // i^j: j mod 4 picks real/imaginary part and sign
        let sign = if (j / 2) % 2 == 0 { c } else { -c };
        let m = Monomial::new(k - j, j);
        if j % 2 == 0 {
            f.add_term(m, sign);
        } else {
            g.add_term(m, sign);
        }
    }
    (f, g)
}
