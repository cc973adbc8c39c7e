//! Indices of coincidence and entropic uncertainty bounds for sets of MUMs.
//!
//! All bounds are state-dependent through the purity `Tr(ρ²)`; setting the
//! purity to 1 gives the state-independent forms and `κ = 1` the forms for
//! mutually unbiased bases.

use serde::{Deserialize, Serialize};

use crate::entropy::{self, alpha_log, binary_tsallis, distort, ProbabilityDistribution};
use crate::error::{invalid, MumError, Result};
use crate::linalg::HermitianOperator;
use crate::mum::MumSet;
use crate::tol::Tolerances;

/// Slack for parameter range checks (κ, purity, C).
const RANGE_SLACK: f64 = 1e-10;

/// `Σ p_n²`.
pub fn index_of_coincidence(p: &ProbabilityDistribution) -> f64 {
    p.index_of_coincidence()
}

pub(crate) fn check_count(m: usize, d: usize) -> Result<()> {
    if d < 2 {
        return invalid(format!("dimension must be at least 2, got {d}"));
    }
    if m == 0 || m > d + 1 {
        return invalid(format!("number of measurements must lie in 1..={}, got {m}", d + 1));
    }
    Ok(())
}

pub(crate) fn check_kappa(d: usize, kappa: f64) -> Result<()> {
    let lo = 1.0 / d as f64;
    if !(kappa >= lo - RANGE_SLACK && kappa <= 1.0 + RANGE_SLACK) {
        return invalid(format!("efficiency must lie in [1/d, 1], got {kappa} for d = {d}"));
    }
    Ok(())
}

pub(crate) fn check_purity(d: usize, purity: f64) -> Result<()> {
    let lo = 1.0 / d as f64;
    if !(purity >= lo - RANGE_SLACK && purity <= 1.0 + RANGE_SLACK) {
        return invalid(format!("purity must lie in [1/d, 1], got {purity} for d = {d}"));
    }
    Ok(())
}

fn check_all(m: usize, d: usize, kappa: f64, purity: f64) -> Result<()> {
    check_count(m, d)?;
    check_kappa(d, kappa)?;
    check_purity(d, purity)
}

/// `(κd − 1)(Tr(ρ²)d − 1)`, clamped at zero against round-off.
fn excess(d: f64, kappa: f64, purity: f64) -> f64 {
    ((kappa * d - 1.0).max(0.0)) * ((purity * d - 1.0).max(0.0))
}

/// Upper bound on `Σ_b C(P^(b)|ρ)`:
/// `(M−1)/d + [1 − κ + (κd − 1) Tr(ρ²)]/(d − 1)`.
pub fn coincidence_sum_bound(m: usize, d: usize, kappa: f64, purity: f64) -> Result<f64> {
    check_all(m, d, kappa, purity)?;
    let (mf, df) = (m as f64, d as f64);
    Ok((mf - 1.0) / df + (1.0 - kappa + (kappa * df - 1.0) * purity) / (df - 1.0))
}

/// Upper bound on the average index of coincidence,
/// `[M(d−1) + (κd−1)(Tr(ρ²)d−1)] / [Md(d−1)]`.
fn average_coincidence_bound(m: usize, d: usize, kappa: f64, purity: f64) -> f64 {
    let (mf, df) = (m as f64, d as f64);
    (mf * (df - 1.0) + excess(df, kappa, purity)) / (mf * df * (df - 1.0))
}

/// `g_d(C) = (1 + √(d−1) √(Cd − 1)) / d`, an upper bound on `max p_n` for
/// any distribution of `d` outcomes with index of coincidence `C`.
pub fn gd_max_probability(c: f64, d: usize) -> Result<f64> {
    if d < 1 {
        return invalid("dimension must be positive");
    }
    let df = d as f64;
    if !(c >= 1.0 / df - RANGE_SLACK && c <= 1.0 + RANGE_SLACK) {
        return invalid(format!("index of coincidence must lie in [1/d, 1], got {c}"));
    }
    Ok((1.0 + (df - 1.0).sqrt() * (c * df - 1.0).max(0.0).sqrt()) / df)
}

/// Lower bound on the average Rényi entropy, `α ∈ [2, ∞]`.
pub fn renyi_uncertainty_bound(alpha: f64, m: usize, d: usize, kappa: f64, purity: f64) -> Result<f64> {
    if !(alpha >= 2.0) {
        return invalid(format!("Rényi bound needs alpha in [2, inf], got {alpha}"));
    }
    check_all(m, d, kappa, purity)?;
    let (mf, df) = (m as f64, d as f64);
    let collision = -average_coincidence_bound(m, d, kappa, purity).ln();
    let root = ((kappa * df - 1.0).max(0.0)).sqrt() * ((purity * df - 1.0).max(0.0)).sqrt();
    let min_entropy = df.ln() - (1.0 + root / mf.sqrt()).ln();
    Ok(if alpha.is_infinite() {
        min_entropy
    } else {
        (collision + (alpha - 2.0) * min_entropy) / (alpha - 1.0)
    })
}

/// Lower bound on the average Rényi entropy for `α ∈ (0, 2]`, independent of
/// `α`: the collision-entropy bound, valid because `R_α ≥ R_2` there.
pub fn renyi_low_order_bound(m: usize, d: usize, kappa: f64, purity: f64) -> Result<f64> {
    check_all(m, d, kappa, purity)?;
    Ok(-average_coincidence_bound(m, d, kappa, purity).ln())
}

/// The average Rényi bound obtained from the collision entropy alone,
/// `α / (2(α−1))` times the collision bound.
pub fn renyi_collision_only_bound(alpha: f64, m: usize, d: usize, kappa: f64, purity: f64) -> Result<f64> {
    entropy::collision_only_bound(renyi_low_order_bound(m, d, kappa, purity)?, alpha)
}

/// Lower bound on the average Tsallis entropy, `α ∈ (0, 2]`.
pub fn tsallis_uncertainty_bound(alpha: f64, m: usize, d: usize, kappa: f64, purity: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return invalid(format!("Tsallis bound needs alpha in (0, 2], got {alpha}"));
    }
    check_all(m, d, kappa, purity)?;
    alpha_log(1.0 / average_coincidence_bound(m, d, kappa, purity), alpha)
}

/// Tsallis bound with detector efficiency `η`: `ηᵅ · bound + h_α(η)`.
pub fn tsallis_inefficiency_bound(alpha: f64, m: usize, d: usize, kappa: f64, purity: f64, eta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eta) {
        return invalid(format!("efficiency must lie in [0, 1], got {eta}"));
    }
    let base = tsallis_uncertainty_bound(alpha, m, d, kappa, purity)?;
    Ok(eta.powf(alpha) * base + binary_tsallis(eta, alpha)?)
}

/// Indices of coincidence of a MUM set on one state against the sum bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceReport {
    pub d: usize,
    pub m: usize,
    pub kappa: f64,
    pub purity: f64,
    pub per_measurement: Vec<f64>,
    pub total: f64,
    pub bound: f64,
    pub is_complete_set: bool,
    /// `bound − total`
    pub margin: f64,
    pub satisfied: bool,
}

pub fn verify_coincidence(mums: &MumSet, rho: &HermitianOperator, tol: &Tolerances) -> Result<CoincidenceReport> {
    let d = mums.dim();
    if rho.dim() != d {
        return Err(MumError::DimensionMismatch {
            expected: d,
            got: rho.dim(),
        });
    }
    let purity = rho.purity();
    let per_measurement: Vec<f64> = mums.probabilities(rho)?.iter().map(index_of_coincidence).collect();
    let total: f64 = per_measurement.iter().sum();
    let bound = coincidence_sum_bound(mums.len(), d, mums.kappa(), purity)?;
    let margin = bound - total;
    let is_complete_set = mums.is_complete();
    let inv_d = 1.0 / d as f64;
    let entries_ok = per_measurement
        .iter()
        .all(|&c| c >= inv_d - tol.bound && c <= 1.0 + tol.bound);
    let satisfied = entries_ok && margin >= -tol.bound && (!is_complete_set || margin.abs() <= tol.identity);
    Ok(CoincidenceReport {
        d,
        m: mums.len(),
        kappa: mums.kappa(),
        purity,
        per_measurement,
        total,
        bound,
        is_complete_set,
        margin,
        satisfied,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundFamily {
    Renyi,
    Tsallis,
    Shannon,
    TsallisInefficiency,
}

impl BoundFamily {
    pub fn name(self) -> &'static str {
        match self {
            Self::Renyi => "renyi",
            Self::Tsallis => "tsallis",
            Self::Shannon => "shannon",
            Self::TsallisInefficiency => "tsallis_inefficiency",
        }
    }
}

/// Observed average entropy of a MUM set against the matching lower bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub family: BoundFamily,
    /// `None` encodes `α = ∞`.
    pub alpha: Option<f64>,
    pub m: usize,
    pub d: usize,
    pub kappa: f64,
    pub purity: f64,
    pub eta: Option<f64>,
    pub bound_value: f64,
    pub observed_average_entropy: f64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn alpha_value(&self) -> f64 {
        self.alpha.unwrap_or(f64::INFINITY)
    }

    pub fn margin(&self) -> f64 {
        self.observed_average_entropy - self.bound_value
    }
}

pub fn verify_uncertainty(
    mums: &MumSet,
    rho: &HermitianOperator,
    alpha: f64,
    family: BoundFamily,
    eta: Option<f64>,
    tol: &Tolerances,
) -> Result<BoundReport> {
    let probs = mums.probabilities(rho)?;
    verify_uncertainty_from_probabilities(mums, &probs, rho.purity(), alpha, family, eta, tol)
}

/// Same as [`verify_uncertainty`] with the outcome distributions and purity
/// already computed; lets a driver evaluate many orders per state.
pub fn verify_uncertainty_from_probabilities(
    mums: &MumSet,
    probs: &[ProbabilityDistribution],
    purity: f64,
    alpha: f64,
    family: BoundFamily,
    eta: Option<f64>,
    tol: &Tolerances,
) -> Result<BoundReport> {
    let (m, d, kappa) = (mums.len(), mums.dim(), mums.kappa());
    if probs.len() != m {
        return Err(MumError::DimensionMismatch {
            expected: m,
            got: probs.len(),
        });
    }
    let mean = |f: &dyn Fn(&ProbabilityDistribution) -> Result<f64>| -> Result<f64> {
        let mut s = 0.0;
        for p in probs {
            s += f(p)?;
        }
        Ok(s / m as f64)
    };
    let (bound_value, observed, eta) = match family {
        BoundFamily::Renyi => {
            if eta.is_some() {
                return invalid("the Rényi family takes no detector efficiency");
            }
            let bound = renyi_uncertainty_bound(alpha, m, d, kappa, purity)?;
            (bound, mean(&|p| entropy::renyi_entropy(p, alpha))?, None)
        }
        BoundFamily::Tsallis => {
            if eta.is_some() {
                return invalid("the Tsallis family takes no detector efficiency; use tsallis_inefficiency");
            }
            let bound = tsallis_uncertainty_bound(alpha, m, d, kappa, purity)?;
            (bound, mean(&|p| entropy::tsallis_entropy(p, alpha))?, None)
        }
        BoundFamily::Shannon => {
            if alpha != 1.0 {
                return invalid(format!("the Shannon family has alpha = 1, got {alpha}"));
            }
            let bound = tsallis_uncertainty_bound(1.0, m, d, kappa, purity)?;
            (bound, mean(&|p| Ok(entropy::shannon_entropy(p)))?, None)
        }
        BoundFamily::TsallisInefficiency => {
            let eta = match eta {
                Some(e) => e,
                None => return invalid("the inefficiency family needs a detector efficiency"),
            };
            let bound = tsallis_inefficiency_bound(alpha, m, d, kappa, purity, eta)?;
            let observed = mean(&|p| entropy::tsallis_entropy(distort(p, eta)?.extended(), alpha))?;
            (bound, observed, Some(eta))
        }
    };
    Ok(BoundReport {
        family,
        alpha: alpha.is_finite().then_some(alpha),
        m,
        d,
        kappa,
        purity,
        eta,
        bound_value,
        observed_average_entropy: observed,
        satisfied: observed >= bound_value - tol.bound,
    })
}
