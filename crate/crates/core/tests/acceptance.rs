//! Acceptance suite. Runs every criterion at its stated tolerance and
//! prints one PASS/FAIL line per criterion; exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::Rng;

use mumkit::entangle::{conjugate_mum, correlation_measure, detect, isotropic_state};
use mumkit::entropy::{
    binary_tsallis, collision_only_bound, distort, renyi_entropy, renyi_interpolation_bound, tsallis_entropy,
};
use mumkit::linalg::HermitianOperator;
use mumkit::mum::{build_max_efficiency, MumSet};
use mumkit::par::{map_indexed, Execution};
use mumkit::states::{self, generate, random_distribution, StateKind, StateSpec};
use mumkit::tol::Tolerances;
use mumkit::uncertainty::{renyi_uncertainty_bound, tsallis_inefficiency_bound, verify_coincidence};
use mumkit::verify::{gamma_grid, verify_ensemble, BoundPlan, Ensemble, RENYI_ALPHAS, TSALLIS_ALPHAS};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// `Tr(ρP)` straight from the matrices.
fn prob(rho: &HermitianOperator, p: &HermitianOperator) -> f64 {
    rho.matrix().trace_of_product(p.matrix()).unwrap().re
}

fn coincidence_total(mums: &MumSet, rho: &HermitianOperator) -> f64 {
    mums.povms()
        .iter()
        .map(|povm| povm.elements().iter().map(|e| prob(rho, e).powi(2)).sum::<f64>())
        .sum()
}

fn exact_coincidence(d: usize, kappa: f64, purity: f64) -> f64 {
    let df = d as f64;
    1.0 + (1.0 - kappa + (kappa * df - 1.0) * purity) / (df - 1.0)
}

/// Largest deviation of a set from the MUM axioms, computed directly.
fn axiom_residual(mums: &MumSet, t: f64) -> f64 {
    let d = mums.dim();
    let df = d as f64;
    let kappa = mums.kappa();
    let s = 1.0 + df.sqrt();
    let mut worst = (kappa - (1.0 / df + t * t * s * s * (df - 1.0))).abs();
    let within = (1.0 - kappa) / (df - 1.0);
    for (a, pa) in mums.povms().iter().enumerate() {
        let mut sum = HermitianOperator::identity(d).scale(0.0);
        for (m, p) in pa.elements().iter().enumerate() {
            worst = worst.max((p.trace() - 1.0).abs());
            worst = worst.max(-p.eigenvalues().unwrap()[0]);
            sum = sum.add_scaled(1.0, p).unwrap();
            for (b, pb) in mums.povms().iter().enumerate() {
                for (n, q) in pb.elements().iter().enumerate() {
                    let g = p.matrix().trace_of_product(q.matrix()).unwrap();
                    let want = if a != b {
                        1.0 / df
                    } else if m == n {
                        kappa
                    } else {
                        within
                    };
                    worst = worst.max((g.re - want).abs()).max(g.im.abs());
                }
            }
        }
        worst = worst.max(sum.matrix().max_abs_diff(HermitianOperator::identity(d).matrix()));
    }
    worst
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for d in 2..=7 {
        let mums = ok(build_max_efficiency(d, d + 1))?;
        let r = axiom_residual(&mums, mums.t());
        let lib = ok(mums.residuals())?.max_residual();
        ensure(r < 1e-8 && lib < 1e-8, || {
            format!("d={d}: residual {r:e} (library {lib:e})")
        })?;
        worst = worst.max(r).max(lib);
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("runtime {secs:.2} s"))?;
    Ok(format!("max residual {worst:.2e}, runtime {secs:.2} s"))
}

const KINDS: [StateKind; 3] = [
    StateKind::MixedRandom,
    StateKind::PureRandom,
    StateKind::CompletelyMixed,
];

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for d in 2..=6 {
        let mums = ok(build_max_efficiency(d, d + 1))?;
        let kappa = mums.kappa();
        let devs = map_indexed(200, Execution::Parallel, |i| {
            let rho = generate(&StateSpec::new(KINDS[i % 3], d, 2, i as u64))
                .unwrap()
                .into_single()
                .unwrap();
            (coincidence_total(&mums, &rho) - exact_coincidence(d, kappa, rho.purity())).abs()
        });
        let dev = devs.iter().copied().fold(0.0, f64::max);
        ensure(dev < 1e-8, || format!("d={d}: deviation {dev:e}"))?;
        worst = worst.max(dev);

        let pure = generate(&StateSpec::new(StateKind::PureRandom, d, 3, 0))
            .unwrap()
            .into_single()
            .unwrap();
        let pure_dev = (coincidence_total(&mums, &pure) - (1.0 + kappa)).abs();
        let mixed = states::completely_mixed(d);
        let mixed_dev = (coincidence_total(&mums, &mixed) - (d as f64 + 1.0) / d as f64).abs();
        ensure(pure_dev < 1e-8 && mixed_dev < 1e-8, || {
            format!("d={d}: pure {pure_dev:e}, completely mixed {mixed_dev:e}")
        })?;
        worst = worst.max(pure_dev).max(mixed_dev);
    }
    Ok(format!("1000 states, max deviation {worst:.2e}"))
}

fn criterion_3() -> Outcome {
    let tol = Tolerances::default();
    let mut min_margin = f64::INFINITY;
    let mut count = 0;
    for d in 2..=6 {
        let full = ok(build_max_efficiency(d, d + 1))?;
        for m in 1..=d {
            let mums = ok(full.truncated(m))?;
            let kappa = mums.kappa();
            let margins = map_indexed(200, Execution::Parallel, |i| {
                let rho = generate(&StateSpec::new(KINDS[i % 3], d, 2, i as u64))
                    .unwrap()
                    .into_single()
                    .unwrap();
                let df = d as f64;
                let bound = (m as f64 - 1.0) / df + (1.0 - kappa + (kappa * df - 1.0) * rho.purity()) / (df - 1.0);
                let report = verify_coincidence(&mums, &rho, &tol).unwrap();
                (bound - coincidence_total(&mums, &rho)).min(report.margin)
            });
            let low = margins.iter().copied().fold(f64::INFINITY, f64::min);
            ensure(low >= -1e-9, || format!("d={d} M={m}: margin {low:e}"))?;
            min_margin = min_margin.min(low);
            count += margins.len();
        }
    }
    Ok(format!("{count} samples, min margin {min_margin:.2e}"))
}

fn criterion_4() -> Outcome {
    let gaps = map_indexed(10_000, Execution::Parallel, |i| {
        let mut rng = states::rng(4, i as u64);
        let n = rng.random_range(2..=10);
        let p = random_distribution(n, &mut rng);
        let r2 = renyi_entropy(&p, 2.0).unwrap();
        let rinf = renyi_entropy(&p, f64::INFINITY).unwrap();
        let mut worst = f64::INFINITY;
        for &alpha in &RENYI_ALPHAS {
            let ra = renyi_entropy(&p, alpha).unwrap();
            let interp = renyi_interpolation_bound(r2, rinf, alpha).unwrap();
            let coll = collision_only_bound(r2, alpha).unwrap();
            worst = worst.min(ra - interp).min(interp - coll);
        }
        worst
    });
    let low = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    ensure(low >= -1e-12, || format!("min gap {low:e}"))?;
    Ok(format!("10000 distributions, min gap {low:.2e}"))
}

fn criterion_5() -> Outcome {
    let tol = Tolerances::default();
    let plan = BoundPlan::default();
    let mut min_margin = f64::INFINITY;
    let mut checks = 0;
    for d in 2..=5 {
        let full = ok(build_max_efficiency(d, d + 1))?;
        for m in 2..=d + 1 {
            let mums = ok(full.truncated(m))?;
            let records = ok(verify_ensemble(
                &mums,
                Ensemble::Cycle,
                1000,
                5,
                &plan,
                &tol,
                Execution::Parallel,
            ))?;
            for r in &records {
                for b in &r.bounds {
                    checks += 1;
                    min_margin = min_margin.min(b.margin());
                    ensure(b.margin() >= -1e-9, || {
                        format!(
                            "d={d} M={m} {:?} alpha={}: margin {:e}",
                            b.family,
                            b.alpha_value(),
                            b.margin()
                        )
                    })?;
                }
            }

            let rho = states::completely_mixed(d);
            let probs = ok(mums.probabilities(&rho))?;
            let ln_d = (d as f64).ln();
            for &alpha in &RENYI_ALPHAS {
                let observed = probs.iter().map(|p| renyi_entropy(p, alpha).unwrap()).sum::<f64>() / m as f64;
                let bound = ok(renyi_uncertainty_bound(alpha, m, d, mums.kappa(), rho.purity()))?;
                ensure((observed - ln_d).abs() < 1e-8 && (bound - ln_d).abs() < 1e-8, || {
                    format!("d={d} M={m} alpha={alpha}: observed {observed}, bound {bound}, ln d {ln_d}")
                })?;
            }
        }
    }
    Ok(format!(
        "{checks} checks, min margin {min_margin:.2e}; completely mixed saturates ln d"
    ))
}

fn criterion_6() -> Outcome {
    let devs = map_indexed(1000, Execution::Parallel, |i| {
        let mut rng = states::rng(6, i as u64);
        let n = rng.random_range(2..=10);
        let p = random_distribution(n, &mut rng);
        let eta: f64 = rng.random_range(0.0..=1.0);
        let alpha: f64 = rng.random_range(0.1..4.0);
        let lhs = tsallis_entropy(distort(&p, eta).unwrap().extended(), alpha).unwrap();
        let rhs = eta.powf(alpha) * tsallis_entropy(&p, alpha).unwrap() + binary_tsallis(eta, alpha).unwrap();
        (lhs - rhs).abs()
    });
    let dev = devs.iter().copied().fold(0.0, f64::max);
    ensure(dev < 1e-10, || format!("identity deviation {dev:e}"))?;

    let mut min_margin = f64::INFINITY;
    for d in 2..=5 {
        let mums = ok(build_max_efficiency(d, d + 1))?;
        let margins = map_indexed(200, Execution::Parallel, |i| {
            let rho = generate(&StateSpec::new(KINDS[i % 3], d, 6, i as u64))
                .unwrap()
                .into_single()
                .unwrap();
            let probs = mums.probabilities(&rho).unwrap();
            let mut worst = f64::INFINITY;
            for eta in [0.3, 0.7, 1.0] {
                for &alpha in &TSALLIS_ALPHAS {
                    let observed = probs
                        .iter()
                        .map(|p| tsallis_entropy(distort(p, eta).unwrap().extended(), alpha).unwrap())
                        .sum::<f64>()
                        / mums.len() as f64;
                    let bound =
                        tsallis_inefficiency_bound(alpha, mums.len(), d, mums.kappa(), rho.purity(), eta).unwrap();
                    worst = worst.min(observed - bound);
                }
            }
            worst
        });
        let low = margins.iter().copied().fold(f64::INFINITY, f64::min);
        ensure(low >= -1e-9, || format!("d={d}: inefficiency margin {low:e}"))?;
        min_margin = min_margin.min(low);
    }
    Ok(format!(
        "identity max deviation {dev:.2e}; inefficiency min margin {min_margin:.2e}"
    ))
}

fn criterion_7() -> Outcome {
    let mut worst = 0.0f64;
    for d in 2..=4 {
        let full = ok(build_max_efficiency(d, d + 1))?;
        for m in 2..=d + 1 {
            let a = ok(full.truncated(m))?;
            let b = conjugate_mum(&a);
            let kappa = a.kappa();
            for gamma in gamma_grid(21) {
                let state = ok(isotropic_state(d, gamma))?;
                let j = ok(correlation_measure(&a, &b, &state))?;
                let want = m as f64 * (gamma * kappa + (1.0 - gamma) / d as f64);
                let dev = (j - want).abs();
                ensure(dev < 1e-9, || {
                    format!("d={d} M={m} gamma={gamma}: J={j}, closed form {want}")
                })?;
                worst = worst.max(dev);
            }
        }
        let b = conjugate_mum(&full);
        let j = ok(correlation_measure(&full, &b, &ok(isotropic_state(d, 1.0))?))?;
        let kappa = full.kappa();
        ensure((j - (d as f64 + 1.0) * kappa).abs() < 1e-9 && j > 1.0 + kappa, || {
            format!("d={d}: J at gamma=1 is {j}, expected (d+1)kappa above 1+kappa")
        })?;
    }
    Ok(format!("189 points, max deviation {worst:.2e}"))
}

fn criterion_8() -> Outcome {
    let tol = Tolerances::default();
    let mut checked = 0;
    for d in 2..=4 {
        let full = ok(build_max_efficiency(d, d + 1))?;
        for m in 2..=d + 1 {
            let a = ok(full.truncated(m))?;
            let b = conjugate_mum(&a);
            ensure(a.kappa() - 1.0 / d as f64 > 1e-6, || format!("d={d}: kappa is trivial"))?;
            let th = 1.0 / m as f64;
            let mut grid = gamma_grid(21);
            grid.extend([th - 1e-3, th - 1e-6, th + 1e-6, th + 1e-3]);
            for gamma in grid {
                let expected = if gamma > th + 1e-6 - 1e-15 {
                    true
                } else if gamma < th - 1e-6 + 1e-15 {
                    false
                } else {
                    continue;
                };
                let verdict = ok(detect(&a, &b, &ok(isotropic_state(d, gamma))?, false, &tol))?;
                ensure(verdict.entangled == expected, || {
                    format!(
                        "d={d} M={m} gamma={gamma}: flag {} (J={}, bound {})",
                        verdict.entangled, verdict.j_value, verdict.bound_separable
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} grid points flagged as expected"))
}

fn criterion_9() -> Outcome {
    let tol = Tolerances::default();
    let mut flagged = 0;
    let mut min_gap = f64::INFINITY;
    for d in 2..=4 {
        let full = ok(build_max_efficiency(d, d + 1))?;
        let sets: Vec<(MumSet, MumSet)> = (2..=d + 1)
            .map(|m| {
                let a = full.truncated(m).unwrap();
                let b = conjugate_mum(&a);
                (a, b)
            })
            .collect();
        let results = map_indexed(1000, Execution::Parallel, |i| {
            let spec = StateSpec::new(StateKind::SeparableMixture, d, 9, i as u64);
            let state = generate(&spec).unwrap().into_bipartite().unwrap();
            sets.iter()
                .map(|(a, b)| {
                    let v = detect(a, b, &state, true, &tol).unwrap();
                    (v.entangled as usize, v.bound_separable - v.j_value)
                })
                .fold((0, f64::INFINITY), |(n, g), (k, x)| (n + k, g.min(x)))
        });
        for (n, g) in results {
            flagged += n;
            min_gap = min_gap.min(g);
        }
    }
    ensure(flagged == 0, || format!("{flagged} false entanglement flags"))?;
    Ok(format!("3000 separable mixtures, 0 flags, min slack {min_gap:.2e}"))
}

fn criterion_10() -> Outcome {
    let tol = Tolerances::default();
    let mut worst = 0.0f64;
    for d in 2..=7 {
        let a = ok(build_max_efficiency(d, d + 1))?;
        let b = conjugate_mum(&a);
        ensure(a.kappa() == b.kappa(), || {
            format!("d={d}: kappa {} vs {}", a.kappa(), b.kappa())
        })?;
        let residuals = ok(b.residuals())?;
        let r = axiom_residual(&b, a.t());
        ensure(
            residuals.passes(&tol) && residuals.max_residual() < 1e-8 && r < 1e-8,
            || format!("d={d}: residual {:e} / {r:e}", residuals.max_residual()),
        )?;
        worst = worst.max(r).max(residuals.max_residual());
    }
    Ok(format!("max residual {worst:.2e}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("MUM axioms for d=2..7 at maximal t", criterion_1),
        ("exact coincidence identity for complete sets", criterion_2),
        ("coincidence inequality for M=1..d", criterion_3),
        ("Rényi interpolation chain on random distributions", criterion_4),
        ("average Rényi/Tsallis/Shannon bounds on seeded ensembles", criterion_5),
        ("inefficiency identity and bound", criterion_6),
        ("isotropic closed form for J_M", criterion_7),
        ("detection threshold at 1/M", criterion_8),
        ("no false certificates on separable mixtures", criterion_9),
        ("conjugate-set closure", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name} ({detail}) [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
