mod common;

use common::{homogeneous, poly, rational};
use harmgerm::poly::Var;
use harmgerm::{parse_poly, Order, Poly};
use proptest::prelude::*;

proptest! {
    #[test]
    fn ring_laws(p in poly(5), q in poly(5), r in poly(5)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &p * &q + &p * &r);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn laplacian_is_linear(p in poly(6), q in poly(6), a in rational(), b in rational()) {
        let lhs = (p.scale(&a) + q.scale(&b)).laplacian();
        prop_assert_eq!(lhs, p.laplacian().scale(&a) + q.laplacian().scale(&b));
    }

    #[test]
    fn laplacian_lowers_degree_by_two((d, p) in (2u32..9).prop_flat_map(|d| (Just(d), homogeneous(d)))) {
        let lap = p.laplacian();
        prop_assert!(lap.is_zero() || lap.is_homogeneous_of(d - 2));
    }

    #[test]
    fn text_round_trip(p in poly(7)) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn leibniz_rule(p in poly(4), q in poly(4)) {
        for v in [Var::X, Var::Y] {
            prop_assert_eq!((&p * &q).partial(v), &p.partial(v) * &q + &p * &q.partial(v));
        }
    }

    #[test]
    fn graded_components_sum_back(p in poly(6)) {
        let total = (0..=6).fold(Poly::zero(), |acc, d| acc + p.graded_component(d));
        prop_assert_eq!(total, p.clone());
        match p.order() {
            Order::Infinite => prop_assert!(p.is_zero()),
            Order::Finite(o) => prop_assert!(!p.graded_component(o).is_zero()),
        }
    }

    #[test]
    fn truncated_product_agrees(p in poly(5), q in poly(5), bound in 0u32..8) {
        prop_assert_eq!(p.mul_truncated(&q, bound), (&p * &q).truncate(bound));
        prop_assert_eq!(p.pow_truncated(3, bound), p.pow(3).truncate(bound));
    }
}

#[test]
fn zero_has_infinite_order() {
    assert_eq!(Poly::zero().order(), Order::Infinite);
    assert_eq!(parse_poly("x^3*y + y^7").unwrap().order(), Order::Finite(4));
    assert_eq!(Poly::zero().to_string(), "0");
}

#[test]
fn documented_examples() {
    let p = parse_poly("x^2 - y^2").unwrap();
    assert!(p.laplacian().is_zero());
    assert_eq!(
        parse_poly("x^4").unwrap().laplacian(),
        parse_poly("12*x^2").unwrap()
    );
    assert_eq!(
        parse_poly("x^2*y^3").unwrap().partial(Var::Y),
        parse_poly("3*x^2*y^2").unwrap()
    );
    assert_eq!(
        parse_poly("1 + x + x*y + y^3").unwrap().graded_component(2),
        parse_poly("x*y").unwrap()
    );
}
