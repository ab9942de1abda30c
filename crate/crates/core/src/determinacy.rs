//! Finite determinacy via the Jacobian criterion
//! `m^k ⊂ m J_h + m^{k+1}`, evaluated in the truncated ring `E / m^{k+1}`.
//!
//! A `true` verdict certifies that `h` is `k`-determined. A `false` verdict
//! only means the criterion is inconclusive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::solve_pair;
use crate::harmonic::re_im_power;
use crate::jets::{jet_compose, Jet, JetMap};
use crate::linalg::{reduce_against, rref, Matrix};
use crate::poly::{Degree, Monomial, Var};
use crate::scalar::rat;
use crate::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeterminacyCertificate {
    pub germ: Poly,
    /// The `k` in "k-determined".
    pub level: Degree,
    /// Products are read modulo `m^{truncation+1}`.
    pub truncation: Degree,
    /// Truncated products `x^a y^b * dh/dx_i` with `1 <= a + b`.
    pub generators: Vec<Poly>,
    pub verdict: bool,
}

pub fn jacobian_generators(h: &Poly) -> (Poly, Poly) {
    (h.partial(Var::X), h.partial(Var::Y))
}

/// Monomials of degree `1..=k`, lowest degree first.
fn ambient(k: Degree) -> Vec<Monomial> {
    (1..=k).flat_map(Monomial::basis).collect()
}

fn coords(p: &Poly, monomials: &[Monomial]) -> Vec<Rational> {
    monomials.iter().map(|m| p.coeff(*m)).collect()
}

/// Runs the criterion with multipliers of degree `1..=max_multiplier`.
pub fn determinacy_check_with(
    h: &Poly,
    k: Degree,
    max_multiplier: Degree,
) -> DeterminacyCertificate {
    let (hx, hy) = jacobian_generators(h);
    let generators: Vec<Poly> = (1..=max_multiplier.min(k))
        .flat_map(Monomial::basis)
        .flat_map(|m| {
            [
                hx.mul_monomial(m).truncate(k),
                hy.mul_monomial(m).truncate(k),
            ]
        })
        .filter(|p| !p.is_zero())
        .collect();
    let monomials = ambient(k);
    let rows = generators.iter().map(|g| coords(g, &monomials)).collect();
    let (reduced, pivots) = rref(rows, monomials.len());
    let verdict = Monomial::basis(k).all(|m| {
        let target = coords(&Poly::monomial(rat(1), m.x, m.y), &monomials);
        reduce_against(&reduced, &pivots, &target)
            .iter()
            .all(|c| *c == rat(0))
    });
    DeterminacyCertificate {
        germ: h.clone(),
        level: k,
        truncation: k,
        generators,
        verdict,
    }
}

pub fn determinacy_check(h: &Poly, k: Degree) -> DeterminacyCertificate {
    determinacy_check_with(h, k, k)
}

impl DeterminacyCertificate {
    /// Re-derives the verdict without row reduction of the span: for each
    /// degree-`level` monomial, solve for an explicit combination of the
    /// stored generators and multiply it back out.
    pub fn recheck(&self) -> bool {
        let monomials = ambient(self.truncation);
        let columns: Vec<Vec<Rational>> = self
            .generators
            .iter()
            .map(|g| coords(g, &monomials))
            .collect();
        let system = Matrix::from_rows(columns, monomials.len()).transpose();
        Monomial::basis(self.level).all(|m| {
            let target = Poly::monomial(rat(1), m.x, m.y);
            let Some(weights) = system.solve(&coords(&target, &monomials)) else {
                return false;
            };
            let mut combo = Poly::zero();
            for (g, w) in self.generators.iter().zip(&weights) {
                combo += &g.scale(w);
            }
            combo.truncate(self.truncation) == target
        })
    }
}

/// One degree-`(2k-3)` monomial written as `k (u f_{k-1} - v g_{k-1})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceAbsorption {
    pub monomial: Poly,
    pub u: Poly,
    pub v: Poly,
    /// `(f_k + R)∘(x+u, y+v)` agrees with `f_k + R + monomial` through
    /// degree `2k-3`.
    pub translation_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeterminedBoundReport {
    pub k: Degree,
    pub certificate: DeterminacyCertificate,
    pub absorptions: Vec<SliceAbsorption>,
    /// `max(k, 2k-4)` when the certificate and every absorption succeed.
    pub determined_level: Option<Degree>,
}

/// Certifies `f_k + r` at level `2k-3` and exhibits the translations that
/// absorb the whole degree-`(2k-3)` slice, lowering the level to `2k-4`.
pub fn determined_bound_report(k: Degree, r: &Poly) -> Result<DeterminedBoundReport> {
    if k < 5 {
        return Err(Error::Precondition(format!("need k >= 5, got {k}")));
    }
    if !r.order().at_least(k + 1) {
        return Err(Error::Precondition(format!(
            "perturbation must have order >= {}, got {}",
            k + 1,
            r.order()
        )));
    }
    let (fk, _) = re_im_power::<Rational>(k);
    let germ = &fk + r;
    let top = 2 * k - 3;
    let certificate = determinacy_check(&germ, top);
    let (f1, g1) = re_im_power::<Rational>(k - 1);
    let scale = rat(i64::from(k));
    let a = f1.scale(&scale);
    let b = -g1.scale(&scale);
    let germ_jet = Jet::new(&germ, top);
    let absorptions = Monomial::basis(top)
        .map(|m| {
            let monomial = Poly::monomial(rat(1), m.x, m.y);
            let (u, v) = solve_pair(&monomial, &a, &b, k - 1, k - 2)
                .ok_or(Error::NotInSpan { degree: top })?;
            let translation_checked = JetMap::translation(&u, &v, top)
                .and_then(|phi| jet_compose(&germ_jet, &phi))
                .map(|moved| moved.poly() == &(&germ + &monomial).truncate(top))
                .unwrap_or(false);
            Ok(SliceAbsorption {
                monomial,
                u,
                v,
                translation_checked,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = certificate.verdict && absorptions.iter().all(|a| a.translation_checked);
    Ok(DeterminedBoundReport {
        k,
        certificate,
        absorptions,
        determined_level: ok.then(|| k.max(2 * k - 4)),
    })
}
