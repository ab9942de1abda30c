//! Right-equivalence witnesses for germs whose leading term is harmonic.
//!
//! A [`WitnessChain`] records maps `φ_1, ..., φ_n` such that
//! `source ∘ φ_1 ∘ ... ∘ φ_n` agrees with `target` modulo `m^{bound+1}`.
//! When a determinacy certificate for the target at a level `<= bound` is
//! attached, the chain proves full right equivalence.
//!
//! The reduction of `h + ρ + tail` to `h = Re(α z^k)` walks the degrees
//! `k+1, ..., bound` upwards and clears each graded component in place:
//!
//! * below the threshold `s₀` the component lies in `P_s H_k` and is
//!   removed by a root map `z -> z (1 + W)^{1/k}`;
//! * from `s₀` on it lies in `P_{s+1} H_{k-1}` and is removed by a
//!   translation `z -> z - ω`.
//!
//! Both kinds of map send `{Re(c z^{k-1})}` and `{Re(c z^k)}` into
//! themselves, and a translation of degree `s+1 >= s₀+1` only disturbs
//! degrees `>= 2k-3`, where every component is absorbable. So each
//! re-extracted component stays solvable.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::determinacy::{determinacy_check, DeterminacyCertificate};
use crate::error::{Error, Result};
use crate::gauss::{approx_kth_root, exact_kth_root};
use crate::graded::{solve_membership, solve_pair};
use crate::harmonic::{harmonic_coords, re_im_power};
use crate::jets::{
    complex_scale_map, complexify, complexify_scale_map, jet_compose, split_complex, Jet, JetMap,
};
use crate::poly::{Degree, Monomial};
use crate::scalar::rat;
use crate::{GaussPoly, GaussRational, Poly, Rational, RationalJetMap};

/// Laplacian powers allowed for the perturbation in each degree `k + s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaProfile {
    pub k: Degree,
    /// `sigma[s - 1]` for `s = 1..=k-4`.
    pub sigma: Vec<Degree>,
    /// Smallest natural `s` with `2s >= k - 3`.
    pub s0: Degree,
}

impl SigmaProfile {
    pub fn sigma(&self, s: Degree) -> Option<Degree> {
        s.checked_sub(1)
            .and_then(|i| self.sigma.get(i as usize))
            .copied()
    }
}

pub fn sigma_profile(k: Degree) -> Result<SigmaProfile> {
    if k < 5 {
        return Err(Error::Precondition(format!(
            "sigma profile needs k >= 5, got {k}"
        )));
    }
    // s < (k-3)/2  <=>  2s < k-3, compared without rounding
    let sigma = (1..=k - 4)
        .map(|s| if 2 * s < k - 3 { s + 1 } else { s + 2 })
        .collect();
    let s0 = (1..).find(|s| 2 * s >= k - 3).expect("unbounded search");
    Ok(SigmaProfile { k, sigma, s0 })
}

/// Exact chain of jet maps relating two germs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WitnessDocument", into = "WitnessDocument")]
pub struct WitnessChain {
    pub source: Poly,
    pub target: Poly,
    pub bound: Degree,
    pub maps: Vec<RationalJetMap>,
    pub certificate: Option<DeterminacyCertificate>,
    pub verified: bool,
}

impl WitnessChain {
    /// Builds the chain and records whether it checks out.
    pub fn new(
        source: Poly,
        target: Poly,
        bound: Degree,
        maps: Vec<RationalJetMap>,
        certificate: Option<DeterminacyCertificate>,
    ) -> Self {
        let mut chain = WitnessChain {
            source,
            target,
            bound,
            maps,
            certificate,
            verified: false,
        };
        chain.verified = chain.verify();
        chain
    }

    /// `source ∘ φ_1 ∘ ... ∘ φ_n`, modulo `m^{bound+1}`.
    pub fn replay(&self) -> Result<Jet> {
        let mut current = Jet::new(&self.source, self.bound);
        for map in &self.maps {
            current = jet_compose(&current, map)?;
        }
        Ok(current)
    }

    /// Recomputes the jet identity and, if present, the certificate.
    pub fn verify(&self) -> bool {
        let Ok(end) = self.replay() else {
            return false;
        };
        if end.poly() != &self.target.truncate(self.bound) {
            return false;
        }
        match &self.certificate {
            None => true,
            Some(c) => c.verdict && c.level <= self.bound && c.germ == self.target && c.recheck(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MapRecord {
    x: Poly,
    y: Poly,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct WitnessDocument {
    source: Poly,
    target: Poly,
    bound: Degree,
    maps: Vec<MapRecord>,
    certificate: Option<DeterminacyCertificate>,
    verified: bool,
}

impl From<WitnessChain> for WitnessDocument {
    fn from(c: WitnessChain) -> Self {
        WitnessDocument {
            source: c.source,
            target: c.target,
            bound: c.bound,
            maps: c
                .maps
                .iter()
                .map(|m| MapRecord {
                    x: m.first().clone(),
                    y: m.second().clone(),
                })
                .collect(),
            certificate: c.certificate,
            verified: c.verified,
        }
    }
}

impl TryFrom<WitnessDocument> for WitnessChain {
    type Error = Error;

    fn try_from(d: WitnessDocument) -> Result<Self> {
        let maps = d
            .maps
            .iter()
            .map(|m| JetMap::new(&m.x, &m.y, d.bound))
            .collect::<Result<Vec<_>>>()?;
        Ok(WitnessChain {
            source: d.source,
            target: d.target,
            bound: d.bound,
            maps,
            certificate: d.certificate,
            verified: d.verified,
        })
    }
}

mod rational_string {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Approximate linear witness `f_k ∘ φ ≈ a f_k + b g_k` when `a - ib` has
/// no Gaussian-rational k-th root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericWitness {
    pub k: Degree,
    #[serde(with = "rational_string")]
    pub a: Rational,
    #[serde(with = "rational_string")]
    pub b: Rational,
    pub x: Poly,
    pub y: Poly,
    /// Largest coefficient of `f_k ∘ φ - (a f_k + b g_k)`, computed exactly.
    #[serde(with = "rational_string")]
    pub residual: Rational,
    #[serde(with = "rational_string")]
    pub tolerance: Rational,
    pub precision_bits: u32,
}

impl NumericWitness {
    pub fn within_tolerance(&self) -> bool {
        self.residual < self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Normalization {
    Exact(WitnessChain),
    Numeric(NumericWitness),
}

/// Default residual threshold for numeric witnesses, `10^-30`.
pub fn default_tolerance() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(10u32).pow(30))
}

fn gauss(re: Rational, im: Rational) -> GaussRational {
    Complex::new(re, im)
}

/// Linear map `z -> c z`.
fn rotation_map(c: &GaussRational, bound: Degree) -> Result<RationalJetMap> {
    let x = Poly::monomial(c.re.clone(), 1, 0) - Poly::monomial(c.im.clone(), 0, 1);
    let y = Poly::monomial(c.im.clone(), 1, 0) + Poly::monomial(c.re.clone(), 0, 1);
    JetMap::new(&x, &y, bound)
}

/// Finds `φ` with `f_k ∘ φ = a f_k + b g_k`. `φ(z) = c z` with `c^k = a - ib`.
pub fn normalize_harmonic(
    a: &Rational,
    b: &Rational,
    k: Degree,
    bound: Degree,
    tolerance: &Rational,
) -> Result<Normalization> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Precondition(
            "harmonic leading term must be nonzero".into(),
        ));
    }
    if k == 0 || bound < k {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= bound, got k={k}, bound={bound}"
        )));
    }
    if !tolerance.is_positive() {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let (fk, gk) = re_im_power::<Rational>(k);
    let target = fk.scale(a) + gk.scale(b);
    let t = gauss(a.clone(), -b.clone());
    if let Some(c) = exact_kth_root(&t, k) {
        let map = rotation_map(&c, bound)?;
        return Ok(Normalization::Exact(WitnessChain::new(
            fk,
            target,
            bound,
            vec![map],
            None,
        )));
    }
    let mut bits = 128;
    loop {
        let c = approx_kth_root(&t, k, 0, bits).ok_or_else(|| {
            Error::Precondition("coefficients out of range for root seeding".into())
        })?;
        let map = rotation_map(&c, k)?;
        let moved = jet_compose(&Jet::new(&fk, k), &map)?;
        let residual = (moved.poly() - &target)
            .terms()
            .map(|(_, c)| c.abs())
            .fold(Rational::zero(), |acc, v| acc.max(v));
        let witness = NumericWitness {
            k,
            a: a.clone(),
            b: b.clone(),
            x: map.first().clone(),
            y: map.second().clone(),
            residual,
            tolerance: tolerance.clone(),
            precision_bits: bits,
        };
        if witness.within_tolerance() || bits >= 8192 {
            return if witness.within_tolerance() {
                Ok(Normalization::Numeric(witness))
            } else {
                Err(Error::Verification(format!(
                    "numeric residual {} above tolerance",
                    witness.residual
                )))
            };
        }
        bits *= 2;
    }
}

/// Nonzero graded components of `rho`, each of degree above `k`.
fn component_pieces(rho: &Poly, k: Degree) -> Result<Vec<(Degree, Poly)>> {
    let Some(top) = rho.degree() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for d in 0..=top {
        let c = rho.graded_component(d);
        if !c.is_zero() {
            if d <= k {
                return Err(Error::NotInSpan { degree: d });
            }
            out.push((d, c));
        }
    }
    Ok(out)
}

fn i_unit() -> GaussRational {
    gauss(Rational::zero(), Rational::one())
}

/// `u - i v` as a complex polynomial.
fn complex_combination(u: &Poly, v: &Poly) -> GaussPoly {
    complexify(u) - complexify(v).scale(&i_unit())
}

/// Root map realising `f_k ∘ φ = f_k + ρ` for `ρ` in `sum_s P_s H_k`.
pub fn absorb_low(k: Degree, rho: &Poly, bound: Degree) -> Result<WitnessChain> {
    if k == 0 {
        return Err(Error::Precondition("k must be >= 1".into()));
    }
    let lead = rho.graded_component(k);
    if !lead.is_zero() {
        return Err(match solve_membership(&lead, k, 0) {
            Some(_) => Error::Precondition("degree-k part changes the leading term".into()),
            None => Error::NotInSpan { degree: k },
        });
    }
    let mut u = Poly::zero();
    let mut v = Poly::zero();
    for (d, c) in component_pieces(rho, k)? {
        let (ud, vd) = solve_membership(&c, k, d - k).ok_or(Error::NotInSpan { degree: d })?;
        u += &ud;
        v += &vd;
    }
    let (fk, _) = re_im_power::<Rational>(k);
    let map = complexify_scale_map(&Jet::new(&u, bound), &Jet::new(&v, bound), k)?;
    let chain = WitnessChain::new(fk.clone(), &fk + rho, bound, vec![map], None);
    if !chain.verified {
        return Err(Error::Verification(
            "root map does not reproduce the perturbation".into(),
        ));
    }
    Ok(chain)
}

fn check_kernel(component: &Poly, degree: Degree, power: Degree) -> Result<()> {
    let residual = component.laplacian_pow(power);
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::KernelViolation {
            degree,
            power,
            residual: residual.to_string(),
        })
    }
}

fn check_homogeneous(p: &Poly, d: Degree) -> Result<()> {
    if p.is_homogeneous_of(d) {
        Ok(())
    } else if p.is_homogeneous() {
        Err(Error::DegreeMismatch {
            expected: d,
            found: p.degree().unwrap_or(0),
        })
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// Translation `(x + u, y + v)` with `u, v` in `P_{s+1}` realising
/// `f_k ∘ φ ≡ f_k + ρ` modulo `m^{bound+1}`, for `ρ` in `ker Δ^{s+2}` on
/// `P_{k+s}` and `k + s <= bound < k + 2s`.
pub fn absorb_high(k: Degree, s: Degree, rho: &Poly, bound: Degree) -> Result<WitnessChain> {
    let profile = sigma_profile(k)?;
    if s < profile.s0 {
        return Err(Error::Precondition(format!(
            "s = {s} is below s0 = {}",
            profile.s0
        )));
    }
    if bound < k + s || bound >= k + 2 * s {
        return Err(Error::Precondition(format!(
            "bound must satisfy {} <= bound < {}, got {bound}",
            k + s,
            k + 2 * s
        )));
    }
    check_homogeneous(rho, k + s)?;
    check_kernel(rho, k + s, s + 2)?;
    let (f1, g1) = re_im_power::<Rational>(k - 1);
    let scale = rat(i64::from(k));
    let (u, v) = solve_pair(rho, &f1.scale(&scale), &-g1.scale(&scale), k - 1, s + 1)
        .ok_or(Error::NotInSpan { degree: k + s })?;
    let map = JetMap::translation(&u, &v, bound)?;
    let (fk, _) = re_im_power::<Rational>(k);
    let chain = WitnessChain::new(fk.clone(), &fk + rho, bound, vec![map], None);
    if !chain.verified {
        return Err(Error::Verification(
            "translation does not reproduce the perturbation".into(),
        ));
    }
    Ok(chain)
}

/// Clears every component of `germ` above degree `k` up to `bound`,
/// leaving `Re(α z^k)`. Returns the maps in application order.
fn clear_higher_terms(
    germ: &Poly,
    k: Degree,
    alpha: &GaussRational,
    bound: Degree,
    s0: Degree,
) -> Result<Vec<RationalJetMap>> {
    let (f1, g1) = re_im_power::<Rational>(k - 1);
    let alpha_inv = alpha.inv();
    let mut current = Jet::new(germ, bound);
    let mut maps = Vec::new();
    for d in k + 1..=bound {
        let s = d - k;
        let c = current.poly().graded_component(d);
        if c.is_zero() {
            continue;
        }
        let map = if s < s0 {
            // c = Re(Ω z^k); z (1 + W)^{1/k} with W = -Ω/α removes it.
            let (u, v) = solve_membership(&c, k, s).ok_or(Error::NotInSpan { degree: d })?;
            let w = complex_combination(&u, &v).scale(&-alpha_inv.clone());
            complex_scale_map(&Jet::new(&w, bound), k)?
        } else {
            // c = Re(Ω z^{k-1}); z - ω with k α ω = Ω removes it.
            let (u, v) =
                solve_pair(&c, &f1, &g1, k - 1, s + 1).ok_or(Error::NotInSpan { degree: d })?;
            let kk = gauss(rat(i64::from(k)), Rational::zero());
            let omega = complex_combination(&u, &v).scale(&(alpha_inv.clone() / kk));
            let (p, q) = split_complex(&omega);
            JetMap::new(&(Poly::x() - p), &(Poly::y() - q), bound)?
        };
        current = jet_compose(&current, &map)?;
        maps.push(map);
    }
    Ok(maps)
}

fn reduce_to_leading(
    germ: &Poly,
    lead: &Poly,
    k: Degree,
    alpha: &GaussRational,
    bound: Degree,
) -> Result<WitnessChain> {
    let profile = sigma_profile(k)?;
    if bound < 2 * k - 3 {
        return Err(Error::Precondition(format!(
            "bound must be >= {}, got {bound}",
            2 * k - 3
        )));
    }
    let maps = clear_higher_terms(germ, k, alpha, bound, profile.s0)?;
    let certificate = determinacy_check(lead, 2 * k - 3);
    let chain = WitnessChain::new(germ.clone(), lead.clone(), bound, maps, Some(certificate));
    if !chain.verified {
        return Err(Error::Verification(
            "reduction chain failed its exact re-check".into(),
        ));
    }
    Ok(chain)
}

fn validate_perturbations(profile: &SigmaProfile, rho_list: &[Poly]) -> Result<()> {
    let k = profile.k;
    if rho_list.len() > profile.sigma.len() {
        return Err(Error::Precondition(format!(
            "at most {} graded perturbations for k = {k}, got {}",
            profile.sigma.len(),
            rho_list.len()
        )));
    }
    for (i, rho) in rho_list.iter().enumerate() {
        let s = i as Degree + 1;
        check_homogeneous(rho, k + s)?;
        check_kernel(rho, k + s, profile.sigma[i])?;
    }
    Ok(())
}

/// Reduces `f_k + sum_s ρ_{k+s} + tail` to `f_k`, where `rho_list[s-1]`
/// lies in `ker Δ^{σ_s}` on `P_{k+s}` and `tail` has order `>= 2k-3`.
pub fn reduce_main(k: Degree, rho_list: &[Poly], tail: &Poly) -> Result<WitnessChain> {
    let profile = sigma_profile(k)?;
    validate_perturbations(&profile, rho_list)?;
    if !tail.order().at_least(2 * k - 3) {
        return Err(Error::Precondition(format!(
            "tail must have order >= {}, got {}",
            2 * k - 3,
            tail.order()
        )));
    }
    let (fk, _) = re_im_power::<Rational>(k);
    let mut germ = fk.clone() + tail;
    for rho in rho_list {
        germ += rho;
    }
    reduce_to_leading(
        &germ,
        &fk,
        k,
        &gauss(Rational::one(), Rational::zero()),
        2 * k - 3,
    )
}

/// Reduces `f_k + R` with `Δ² R = 0` and `order(R) > k` to `f_k`.
pub fn reduce_biharmonic(k: Degree, r: &Poly, bound: Degree) -> Result<WitnessChain> {
    sigma_profile(k)?;
    if !r.order().at_least(k + 1) {
        return Err(Error::Precondition(format!(
            "R must have order >= {}, got {}",
            k + 1,
            r.order()
        )));
    }
    for d in k + 1..=r.degree().unwrap_or(0) {
        check_kernel(&r.graded_component(d), d, 2)?;
    }
    let (fk, _) = re_im_power::<Rational>(k);
    let germ = &fk + r;
    reduce_to_leading(
        &germ,
        &fk,
        k,
        &gauss(Rational::one(), Rational::zero()),
        bound,
    )
}

/// Result of reducing an arbitrary germ with a harmonic leading part `h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reduction {
    /// `germ ∘ φ_1 ∘ ... ≡ h`.
    pub reduction: WitnessChain,
    /// `f_k ∘ φ = h`, absent when `h = f_k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization: Option<Normalization>,
}

/// Splits `germ` into its degree-`k` part, the perturbations of degrees
/// `k+1..=2k-4`, and the rest, validates each against the σ profile, and
/// reduces it to its leading part.
pub fn reduce_germ(
    germ: &Poly,
    k: Degree,
    bound: Degree,
    tolerance: &Rational,
) -> Result<Reduction> {
    let profile = sigma_profile(k)?;
    if !germ.order().at_least(k) {
        return Err(Error::Precondition(format!(
            "germ has terms of degree below {k}"
        )));
    }
    let rho_list: Vec<Poly> = (1..=k - 4).map(|s| germ.graded_component(k + s)).collect();
    validate_perturbations(&profile, &rho_list)?;
    let lead = germ.graded_component(k);
    let (a, b) = harmonic_coords(&lead, k)
        .filter(|(a, b)| !(a.is_zero() && b.is_zero()))
        .ok_or(Error::LeadingNotHarmonic(k))?;
    let alpha = gauss(a.clone(), -b.clone());
    let reduction = reduce_to_leading(germ, &lead, k, &alpha, bound)?;
    let normalization = if a.is_one() && b.is_zero() {
        None
    } else {
        Some(normalize_harmonic(&a, &b, k, bound, tolerance)?)
    };
    Ok(Reduction {
        reduction,
        normalization,
    })
}

/// Monomials `x^a y^b` of degree `d`, as polynomials.
pub fn monomials(d: Degree) -> Vec<Poly> {
    Monomial::basis(d)
        .map(|m| Poly::monomial(Rational::one(), m.x, m.y))
        .collect()
}
