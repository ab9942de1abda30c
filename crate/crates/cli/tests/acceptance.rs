//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use harmgerm::determinacy::determinacy_check;
use harmgerm::equivalence::{reduce_biharmonic, reduce_main};
use harmgerm::graded::{kernel_basis, product_space, Relation, Subspace};
use harmgerm::harmonic::{
    almansi, check_product_identity, harmonic_pair, harmonic_split, re_im_power,
};
use harmgerm::jets::{jet_compose, jet_root, jets_equivalent_mod, Jet};
use harmgerm::sample::{self, instance_rng, Stream};
use harmgerm::{Monomial, Poly, Rational};

const SEED: u64 = 42;

type Verdict = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

/// `Re (x+iy)^k`, `Im (x+iy)^k` from the binomial theorem, as an oracle
/// independent of the recurrence used by the library.
fn binomial_pair(k: u32) -> (Poly, Poly) {
    let (mut f, mut g) = (Poly::zero(), Poly::zero());
    let mut c = one();
    for j in 0..=k {
        let signed = if (j / 2) % 2 == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        let m = Monomial::new(k - j, j);
        if j % 2 == 0 {
            f.add_term(m, signed);
        } else {
            g.add_term(m, signed);
        }
        c = c * Rational::from_integer((k - j).into()) / Rational::from_integer((j + 1).into());
    }
    (f, g)
}

fn harmonicity() -> Verdict {
    for k in 1..=30 {
        let pair = harmonic_pair::<Rational>(k).map_err(|e| e.to_string())?;
        ensure(
            pair.f.laplacian().is_zero() && pair.g.laplacian().is_zero(),
            || format!("k={k} not harmonic"),
        )?;
        let dim = kernel_basis::<Rational>(k, 1).dim();
        ensure(dim == 2, || format!("k={k}: dim H_k = {dim}"))?;
    }
    Ok("k = 1..30".into())
}

fn recurrences() -> Verdict {
    let (x, y) = (Poly::x(), Poly::y());
    for k in 1..=30 {
        let (f, g) = re_im_power::<Rational>(k);
        ensure((f.clone(), g.clone()) == binomial_pair(k), || {
            format!("k={k} differs from binomial expansion")
        })?;
        let (f1, g1) = re_im_power::<Rational>(k + 1);
        ensure(f1 == &x * &f - &y * &g, || {
            format!("k={k}: real recurrence")
        })?;
        ensure(g1 == &x * &g + &y * &f, || {
            format!("k={k}: imaginary recurrence")
        })?;
    }
    Ok("k = 1..30".into())
}

fn product_identities() -> Verdict {
    for k in 1..=15 {
        for s in 1..=k {
            let r = check_product_identity(s, k).map_err(|e| e.to_string())?;
            ensure(r.first, || format!("real identity fails at ({s},{k})"))?;
            ensure(r.minus_sign, || {
                format!("minus-sign identity fails at ({s},{k})")
            })?;
        }
    }
    let plus_holds = check_product_identity(1, 3)
        .map_err(|e| e.to_string())?
        .plus_sign;
    ensure(!plus_holds, || {
        "plus-sign identity unexpectedly holds at (1,3)".into()
    })?;
    Ok("1 <= s <= k <= 15; expected discrepancy: plus-sign form fails at (s,k)=(1,3)".into())
}

fn harmonic_direct_sum() -> Verdict {
    let r2 = Poly::r_squared();
    for k in 2..=15 {
        let mut inputs: Vec<Poly> = Monomial::basis(k)
            .map(|m| Poly::monomial(one(), m.x, m.y))
            .collect();
        inputs.push(sample::homogeneous(
            &mut instance_rng(SEED, Stream::Split, k, 0),
            k,
        ));
        for p in &inputs {
            let (h, q) = harmonic_split(p).map_err(|e| e.to_string())?;
            ensure(&h + &(&r2 * &q) == *p && h.laplacian().is_zero(), || {
                format!("k={k}: split of {p}")
            })?;
        }
        let harmonic = kernel_basis::<Rational>(k, 1).dim();
        let radial = (k - 1) as usize;
        let mut generators = re_im_power::<Rational>(k);
        let all: Vec<Poly> = [generators.0.clone(), std::mem::take(&mut generators.1)]
            .into_iter()
            .chain(Monomial::basis(k - 2).map(|m| &r2 * &Poly::monomial(one(), m.x, m.y)))
            .collect();
        let sum = Subspace::span(k, &all);
        ensure(harmonic + radial == k as usize + 1 && sum.is_full(), || {
            format!("k={k}: dimension count")
        })?;
    }
    Ok("2 <= k <= 15".into())
}

fn kernel_dimensions() -> Verdict {
    for s in 1..=8u32 {
        for k in 1..=16u32 {
            let dim = kernel_basis::<Rational>(k, s).dim();
            ensure(dim == (2 * s).min(k + 1) as usize, || {
                format!("k={k} s={s}: {dim}")
            })?;
        }
    }
    Ok("1 <= s <= 8, 1 <= k <= 16".into())
}

fn product_space_equality() -> Verdict {
    for s in 0..=8 {
        for k in 1..=10 {
            let span = product_space::<Rational>(s, k);
            if s + 1 < k {
                let rel = span
                    .compare(&kernel_basis(s + k, s + 1))
                    .map_err(|e| e.to_string())?;
                ensure(rel == Relation::Equal, || format!("s={s} k={k}: {rel:?}"))?;
            } else {
                ensure(span.is_full(), || format!("s={s} k={k}: not all of P"))?;
            }
        }
    }
    Ok("0 <= s <= 8, 1 <= k <= 10".into())
}

fn product_space_containment() -> Verdict {
    for s in 1..=6 {
        for k in 2 * s..=12 {
            let span = product_space::<Rational>(s - 1, k - s + 1);
            ensure(
                kernel_basis::<Rational>(k, s).contains_subspace(&span),
                || format!("s={s} k={k}"),
            )?;
        }
    }
    Ok("1 <= s <= 6, 2s <= k <= 12".into())
}

fn almansi_roundtrip() -> Verdict {
    let mut count = 0;
    for d in 0..=12 {
        for s in 1..=5 {
            for u in kernel_basis::<Rational>(d, s).basis() {
                let dec = almansi(&u, d, s).map_err(|e| e.to_string())?;
                ensure(dec.reconstruct() == u, || format!("d={d} s={s}: {u}"))?;
                ensure(
                    dec.components.iter().all(|h| h.laplacian().is_zero()),
                    || format!("d={d} s={s}"),
                )?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} basis elements, d <= 12, s <= 5"))
}

fn determinacy_instances() -> Verdict {
    for k in 5..=7 {
        let fk = re_im_power::<Rational>(k).0;
        for i in 0..=10 {
            let r = if i == 0 {
                Poly::zero()
            } else {
                sample::polynomial(
                    &mut instance_rng(SEED, Stream::Determinacy, k, i),
                    k + 1,
                    k + 1,
                )
            };
            let cert = determinacy_check(&(&fk + &r), 2 * k - 3);
            ensure(cert.verdict && cert.recheck(), || format!("k={k} R={r}"))?;
        }
    }
    Ok("k = 5, 6, 7; R = 0 and 10 seeded".into())
}

fn reduction_to_leading_term() -> Verdict {
    for k in 5..=8 {
        let fk = re_im_power::<Rational>(k).0;
        for i in 0..20 {
            let (rho, tail) =
                sample::main_instance(&mut instance_rng(SEED, Stream::Reduction, k, i), k)
                    .map_err(|e| e.to_string())?;
            let chain = reduce_main(k, &rho, &tail).map_err(|e| format!("k={k} #{i}: {e}"))?;
            let mut jet = Jet::new(&chain.source, chain.bound);
            for m in &chain.maps {
                jet = jet_compose(&jet, m).map_err(|e| e.to_string())?;
            }
            let level = 2 * k - 3;
            let agrees = jets_equivalent_mod(&jet, &Jet::new(&fk, chain.bound), level)
                .map_err(|e| e.to_string())?;
            ensure(agrees, || {
                format!("k={k} #{i}: composed jet differs from f_k")
            })?;
            let cert = chain
                .certificate
                .as_ref()
                .ok_or(format!("k={k} #{i}: no certificate"))?;
            ensure(cert.verdict && cert.level <= chain.bound, || {
                format!("k={k} #{i}: certificate")
            })?;
        }
    }
    Ok("k = 5..8, 20 seeded instances each".into())
}

fn biharmonic() -> Verdict {
    for k in 5..=7 {
        for i in 0..10 {
            let r =
                sample::biharmonic_instance(&mut instance_rng(SEED, Stream::Biharmonic, k, i), k);
            let order = r.order().finite().unwrap_or(0);
            ensure(
                r.laplacian_pow(2).is_zero() && (k + 1..=2 * k - 4).contains(&order),
                || format!("k={k} bad sample"),
            )?;
            let chain =
                reduce_biharmonic(k, &r, 2 * k - 3).map_err(|e| format!("k={k} #{i}: {e}"))?;
            ensure(chain.verify(), || {
                format!("k={k} #{i}: chain does not verify")
            })?;
        }
        let bad = &Poly::monomial(one(), k + 1, 0) + &Poly::r_squared().pow(k / 2 + 1);
        ensure(bad.laplacian_pow(2) != Poly::zero(), || {
            "invalid sample is biharmonic".into()
        })?;
        ensure(reduce_biharmonic(k, &bad, 2 * k - 3).is_err(), || {
            format!("k={k}: invalid R accepted")
        })?;
    }
    Ok("k = 5, 6, 7; 10 seeded R each; invalid R rejected".into())
}

fn jet_roots() -> Verdict {
    for i in 0..100 {
        let (w, k, bound) = sample::jet_root_case(&mut instance_rng(SEED, Stream::JetRoot, 0, i));
        let root = jet_root(&Jet::new(&w, bound), k).map_err(|e| e.to_string())?;
        ensure(
            root.poly().pow_truncated(k, bound) == (Poly::one() + &w).truncate(bound),
            || format!("#{i}: k={k} bound={bound}"),
        )?;
    }
    Ok("100 seeded (w, k, bound), k <= 8, bound <= 10".into())
}

fn determinism() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_harmgerm"))
            .args(["selftest", "--seed", "42"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || {
        "selftest did not pass".into()
    })?;
    ensure(a.stdout == b.stdout, || "reports differ".into())?;
    Ok(format!(
        "two selftest runs, {} identical bytes",
        a.stdout.len()
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Verdict,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "harmonicity and dimension",
            limit: secs(1),
            run: harmonicity,
        },
        Criterion {
            id: 2,
            name: "recurrences",
            limit: None,
            run: recurrences,
        },
        Criterion {
            id: 3,
            name: "product identities",
            limit: None,
            run: product_identities,
        },
        Criterion {
            id: 4,
            name: "harmonic direct sum",
            limit: None,
            run: harmonic_direct_sum,
        },
        Criterion {
            id: 5,
            name: "kernel dimensions",
            limit: None,
            run: kernel_dimensions,
        },
        Criterion {
            id: 6,
            name: "product space equality",
            limit: secs(10),
            run: product_space_equality,
        },
        Criterion {
            id: 7,
            name: "product space containment",
            limit: None,
            run: product_space_containment,
        },
        Criterion {
            id: 8,
            name: "almansi round trip",
            limit: None,
            run: almansi_roundtrip,
        },
        Criterion {
            id: 9,
            name: "determinacy of perturbed f_k",
            limit: secs(30),
            run: determinacy_instances,
        },
        Criterion {
            id: 10,
            name: "reduction to f_k",
            limit: secs(60),
            run: reduction_to_leading_term,
        },
        Criterion {
            id: 11,
            name: "biharmonic perturbations",
            limit: None,
            run: biharmonic,
        },
        Criterion {
            id: 12,
            name: "jet root round trip",
            limit: None,
            run: jet_roots,
        },
        Criterion {
            id: 13,
            name: "selftest determinism",
            limit: None,
            run: determinism,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match (verdict, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (v, _) => v,
        };
        let (label, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if verdict.is_err() {
            failures += 1;
        }
        println!(
            "{label} [{:>2}] {:<30} {:>9.2?}  {detail}",
            c.id, c.name, elapsed
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
