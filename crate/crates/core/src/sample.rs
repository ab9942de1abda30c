//! Seeded random instances.
//!
//! Every generator is a `Xoshiro256PlusPlus` seeded through
//! `seed_from_u64` (SplitMix64 expansion) with the value
//! `seed * 0x9E3779B97F4A7C15 ^ stream << 48 ^ k << 32 ^ index`.
//! Coefficients are integers drawn uniformly from `[-3, 3]`. Elements of a
//! subspace are random integer combinations of its RREF basis.

use rand::Rng;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::equivalence::sigma_profile;
use crate::graded::{kernel_basis, Subspace};
use crate::poly::{Degree, Monomial};
use crate::scalar::rat;
use crate::{Poly, Result};

pub type InstanceRng = Xoshiro256PlusPlus;

/// Independent families of instances drawn from one seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stream {
    Determinacy = 1,
    Reduction = 2,
    Biharmonic = 3,
    JetRoot = 4,
    Misc = 5,
    Split = 6,
    Laws = 7,
    Membership = 8,
    JetMaps = 9,
}

pub fn instance_rng(seed: u64, stream: Stream, k: Degree, index: u64) -> InstanceRng {
    let mixed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ ((stream as u64) << 48)
        ^ (u64::from(k) << 32)
        ^ index;
    Xoshiro256PlusPlus::seed_from_u64(mixed)
}

pub fn coefficient(rng: &mut InstanceRng) -> i64 {
    rng.gen_range(-3..=3)
}

pub fn homogeneous(rng: &mut InstanceRng, d: Degree) -> Poly {
    Poly::from_terms(Monomial::basis(d).map(|m| (m, rat(coefficient(rng)))))
}

/// Random polynomial with components in degrees `lo..=hi`.
pub fn polynomial(rng: &mut InstanceRng, lo: Degree, hi: Degree) -> Poly {
    (lo..=hi).fold(Poly::zero(), |acc, d| acc + homogeneous(rng, d))
}

pub fn in_subspace(rng: &mut InstanceRng, space: &Subspace) -> Poly {
    space
        .basis()
        .iter()
        .fold(Poly::zero(), |acc, b| acc + b.scale(&rat(coefficient(rng))))
}

/// Nonzero element of a nonzero subspace.
pub fn nonzero_in_subspace(rng: &mut InstanceRng, space: &Subspace) -> Poly {
    assert!(space.dim() > 0, "subspace is zero");
    loop {
        let p = in_subspace(rng, space);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Perturbations `ρ_{k+s}` in `ker Δ^{σ_s}` and a tail in degrees
/// `2k-3..=2k-2`.
pub fn main_instance(rng: &mut InstanceRng, k: Degree) -> Result<(Vec<Poly>, Poly)> {
    let profile = sigma_profile(k)?;
    let rho = (1..=k - 4)
        .map(|s| in_subspace(rng, &kernel_basis(k + s, profile.sigma[(s - 1) as usize])))
        .collect();
    let tail = polynomial(rng, 2 * k - 3, 2 * k - 2);
    Ok((rho, tail))
}

/// `R` with `Δ² R = 0` and order in `[k+1, 2k-4]`, with components up to
/// degree `2k-3`.
pub fn biharmonic_instance(rng: &mut InstanceRng, k: Degree) -> Poly {
    let low = rng.gen_range(k + 1..=2 * k - 4);
    let mut r = nonzero_in_subspace(rng, &kernel_basis(low, 2));
    for d in low + 1..=2 * k - 3 {
        r += &in_subspace(rng, &kernel_basis(d, 2));
    }
    r
}

/// Random `(w, k, bound)` with `order(w) >= 1`, `1 <= k <= 8`, `1 <= bound <= 10`.
pub fn jet_root_case(rng: &mut InstanceRng) -> (Poly, Degree, Degree) {
    let k = rng.gen_range(1..=8);
    let bound = rng.gen_range(1..=10);
    let top = rng.gen_range(1..=bound);
    (polynomial(rng, 1, top), k, bound)
}
