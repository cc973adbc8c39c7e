//! Ensemble drivers: run the coincidence and entropy bounds over seeded
//! state ensembles, and sweep isotropic states through the entanglement
//! criterion. Each sample is an independent `(seed, stream)` pair, so the
//! drivers parallelize over samples without changing results.

use serde::{Deserialize, Serialize};

use crate::entangle::{conjugate_mum, correlation_measure, detect, isotropic_j_closed_form, isotropic_state};
use crate::error::Result;
use crate::mum::MumSet;
use crate::par::{map_indexed, Execution};
use crate::states::{generate, StateKind, StateSpec};
use crate::tol::Tolerances;
use crate::uncertainty::{
    verify_coincidence, verify_uncertainty_from_probabilities, BoundFamily, BoundReport, CoincidenceReport,
};

pub const RENYI_ALPHAS: [f64; 6] = [2.0, 2.5, 3.0, 5.0, 10.0, f64::INFINITY];
pub const TSALLIS_ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    Pure,
    Mixed,
    CompletelyMixed,
    /// Cycles mixed, pure, completely mixed by sample index.
    Cycle,
}

impl Ensemble {
    pub fn spec(self, d: usize, seed: u64, index: usize) -> StateSpec {
        let kind = match self {
            Self::Pure => StateKind::PureRandom,
            Self::Mixed => StateKind::MixedRandom,
            Self::CompletelyMixed => StateKind::CompletelyMixed,
            Self::Cycle => [
                StateKind::MixedRandom,
                StateKind::PureRandom,
                StateKind::CompletelyMixed,
            ][index % 3],
        };
        StateSpec::new(kind, d, seed, index as u64)
    }
}

/// Which entropy bounds to evaluate per state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundPlan {
    pub renyi_alphas: Vec<f64>,
    pub tsallis_alphas: Vec<f64>,
    pub shannon: bool,
    /// Detector efficiencies for the inefficiency family (over `tsallis_alphas`).
    pub etas: Vec<f64>,
}

impl Default for BoundPlan {
    fn default() -> Self {
        Self {
            renyi_alphas: RENYI_ALPHAS.to_vec(),
            tsallis_alphas: TSALLIS_ALPHAS.to_vec(),
            shannon: true,
            etas: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub state: StateSpec,
    pub coincidence: CoincidenceReport,
    pub bounds: Vec<BoundReport>,
}

impl VerifyRecord {
    pub fn satisfied(&self) -> bool {
        self.coincidence.satisfied && self.bounds.iter().all(|b| b.satisfied)
    }
}

pub fn verify_state(mums: &MumSet, spec: &StateSpec, plan: &BoundPlan, tol: &Tolerances) -> Result<VerifyRecord> {
    let rho = generate(spec)?.into_single()?;
    let coincidence = verify_coincidence(mums, &rho, tol)?;
    let probs = mums.probabilities(&rho)?;
    let purity = rho.purity();
    let mut bounds = Vec::new();
    let mut push = |alpha: f64, family: BoundFamily, eta: Option<f64>| -> Result<()> {
        bounds.push(verify_uncertainty_from_probabilities(
            mums, &probs, purity, alpha, family, eta, tol,
        )?);
        Ok(())
    };
    for &a in &plan.renyi_alphas {
        push(a, BoundFamily::Renyi, None)?;
    }
    for &a in &plan.tsallis_alphas {
        push(a, BoundFamily::Tsallis, None)?;
    }
    if plan.shannon {
        push(1.0, BoundFamily::Shannon, None)?;
    }
    for &eta in &plan.etas {
        for &a in &plan.tsallis_alphas {
            push(a, BoundFamily::TsallisInefficiency, Some(eta))?;
        }
    }
    Ok(VerifyRecord {
        state: spec.clone(),
        coincidence,
        bounds,
    })
}

/// Verifies `samples` states drawn from `ensemble`; records come back in
/// sample order.
pub fn verify_ensemble(
    mums: &MumSet,
    ensemble: Ensemble,
    samples: usize,
    seed: u64,
    plan: &BoundPlan,
    tol: &Tolerances,
    exec: Execution,
) -> Result<Vec<VerifyRecord>> {
    map_indexed(samples, exec, |i| {
        verify_state(mums, &ensemble.spec(mums.dim(), seed, i), plan, tol)
    })
    .into_iter()
    .collect()
}

/// `points` evenly spaced weights on `[0, 1]`.
pub fn gamma_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![1.0],
        _ => (0..points).map(|k| k as f64 / (points - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub d: usize,
    pub m: usize,
    pub kappa: f64,
    pub gamma: f64,
    /// Detection threshold `1/M`.
    pub threshold: f64,
    pub j_measured: f64,
    pub j_closed_form: f64,
    pub bound_separable: f64,
    pub entangled: bool,
    /// `γ > 1/(d+1)`, where isotropic states are known to be entangled.
    pub known_entangled: bool,
    pub note: Option<String>,
}

/// Isotropic sweep: for each `M` in `ms`, the first `M` measurements of
/// `base` on side A and their conjugates on side B.
pub fn entangle_scan(
    base: &MumSet,
    ms: &[usize],
    gammas: &[f64],
    tol: &Tolerances,
    exec: Execution,
) -> Result<Vec<ScanRow>> {
    let d = base.dim();
    let mut rows = Vec::with_capacity(ms.len() * gammas.len());
    for &m in ms {
        let a = base.truncated(m)?;
        let b = conjugate_mum(&a);
        let chunk = map_indexed(gammas.len(), exec, |i| -> Result<ScanRow> {
            let gamma = gammas[i];
            let state = isotropic_state(d, gamma)?;
            let verdict = detect(&a, &b, &state, false, tol)?;
            Ok(ScanRow {
                d,
                m,
                kappa: a.kappa(),
                gamma,
                threshold: 1.0 / m as f64,
                j_measured: correlation_measure(&a, &b, &state)?,
                j_closed_form: isotropic_j_closed_form(m, d, a.kappa(), gamma)?,
                bound_separable: verdict.bound_separable,
                entangled: verdict.entangled,
                known_entangled: gamma > 1.0 / (d as f64 + 1.0),
                note: verdict.note,
            })
        });
        for row in chunk {
            rows.push(row?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mum::build_max_efficiency;

    #[test]
    fn cycle_ensemble_rotates_kinds() {
        let kinds: Vec<_> = (0..4).map(|i| Ensemble::Cycle.spec(3, 1, i).kind).collect();
        assert_eq!(
            kinds,
            vec![
                StateKind::MixedRandom,
                StateKind::PureRandom,
                StateKind::CompletelyMixed,
                StateKind::MixedRandom
            ]
        );
    }

    #[test]
    fn grid_endpoints() {
        let g = gamma_grid(21);
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[20], 1.0);
        assert_eq!(g[10], 0.5);
    }

    #[test]
    fn small_ensemble_is_satisfied_and_mode_independent() {
        let mums = build_max_efficiency(3, 3).unwrap();
        let plan = BoundPlan {
            etas: vec![0.7],
            ..BoundPlan::default()
        };
        let tol = Tolerances::default();
        let seq = verify_ensemble(&mums, Ensemble::Cycle, 12, 5, &plan, &tol, Execution::Sequential).unwrap();
        let par = verify_ensemble(&mums, Ensemble::Cycle, 12, 5, &plan, &tol, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert!(seq.iter().all(VerifyRecord::satisfied));
        assert_eq!(seq[0].bounds.len(), 6 + 4 + 1 + 4);
    }
}
