use harmgerm::determinacy::determinacy_check;
use harmgerm::equivalence::{absorb_high, reduce_biharmonic, reduce_main, sigma_profile};
use harmgerm::graded::{kernel_basis, solve_pair};
use harmgerm::harmonic::re_im_power;
use harmgerm::jets::{jets_equivalent_mod, Jet};
use harmgerm::sample::{biharmonic_instance, instance_rng, main_instance, polynomial, Stream};
use harmgerm::{Poly, Rational};

fn f(k: u32) -> Poly {
    re_im_power::<Rational>(k).0
}

#[test]
fn reduction_succeeds_on_seeded_instances() {
    for k in 5..=8 {
        for i in 0..20 {
            let mut rng = instance_rng(2024, Stream::Reduction, k, i);
            let (rho, tail) = main_instance(&mut rng, k).unwrap();
            let chain = reduce_main(k, &rho, &tail).unwrap();
            assert!(chain.verified && chain.verify(), "k={k} i={i}");
            let end = chain.replay().unwrap();
            let lhs = Jet::new(end.poly(), 2 * k - 4);
            let rhs = Jet::new(&f(k), 2 * k - 4);
            assert!(jets_equivalent_mod(&lhs, &rhs, 2 * k - 4).unwrap());
            assert!(chain.certificate.as_ref().unwrap().verdict);
        }
    }
}

#[test]
fn high_slices_are_absorbable() {
    for k in 5..=9 {
        let s0 = sigma_profile(k).unwrap().s0;
        let (f1, g1) = re_im_power::<Rational>(k - 1);
        for s in s0..=k - 4 {
            for rho in kernel_basis::<Rational>(k + s, s + 2).basis() {
                assert!(
                    solve_pair(&rho, &f1, &g1, k - 1, s + 1).is_some(),
                    "k={k} s={s}"
                );
                let chain = absorb_high(k, s, &rho, k + s).unwrap();
                assert!(chain.verify());
            }
        }
    }
}

#[test]
fn perturbed_harmonics_are_determined() {
    for k in 5..=7 {
        assert!(determinacy_check(&f(k), 2 * k - 3).verdict);
        for i in 0..10 {
            let mut rng = instance_rng(11, Stream::Determinacy, k, i);
            let r = polynomial(&mut rng, k + 1, k + 1);
            let cert = determinacy_check(&(&f(k) + &r), 2 * k - 3);
            assert!(cert.verdict && cert.recheck(), "k={k} i={i}");
        }
    }
}

#[test]
fn biharmonic_perturbations_reduce() {
    for k in 5..=7 {
        for i in 0..10 {
            let mut rng = instance_rng(5, Stream::Biharmonic, k, i);
            let r = biharmonic_instance(&mut rng, k);
            assert!(reduce_biharmonic(k, &r, 2 * k - 3).unwrap().verified);
        }
    }
}
