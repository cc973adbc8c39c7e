//! Rényi and Tsallis entropies of finite distributions, in nats.
//!
//! Orders are plain `f64`; the Rényi family also accepts `f64::INFINITY`
//! for the min-entropy. Zero-probability outcomes contribute nothing.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, MumError, Result};
use crate::tol;

/// A finite probability vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProbabilityDistribution {
    probs: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Validates nonnegativity and normalization (slack [`tol::NORMALIZATION`]).
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return invalid("empty distribution");
        }
        if let Some(&p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(MumError::NegativeProbability(p));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol::NORMALIZATION {
            return Err(MumError::NotNormalized(sum));
        }
        Ok(Self { probs })
    }

    /// Rounds values in `[-tol::PROBABILITY_CLAMP, 0)` up to zero and
    /// renormalizes. More negative entries are an error.
    pub fn from_clamped(mut probs: Vec<f64>) -> Result<Self> {
        for p in probs.iter_mut() {
            if *p < 0.0 {
                if *p < -tol::PROBABILITY_CLAMP {
                    return Err(MumError::NegativeProbability(*p));
                }
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol::NORMALIZATION {
            return Err(MumError::NotNormalized(sum));
        }
        probs.iter_mut().for_each(|p| *p /= sum);
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }

    /// `Σ p_n²`.
    pub fn index_of_coincidence(&self) -> f64 {
        self.probs.iter().map(|p| p * p).sum()
    }

    fn power_sum(&self, alpha: f64) -> f64 {
        self.probs.iter().filter(|&&p| p > 0.0).map(|p| p.powf(alpha)).sum()
    }
}

fn check_order(alpha: f64, allow_infinite: bool) -> Result<()> {
    let ok = alpha > 0.0 && (alpha.is_finite() || (allow_infinite && alpha == f64::INFINITY));
    if ok {
        Ok(())
    } else {
        invalid(format!("entropy order must be positive, got {alpha}"))
    }
}

pub fn shannon_entropy(p: &ProbabilityDistribution) -> f64 {
    -p.probs.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

/// Rényi entropy `(1−α)⁻¹ ln Σ p_nᵅ`, with the Shannon and min-entropy limits
/// at `α = 1` and `α = ∞`.
pub fn renyi_entropy(p: &ProbabilityDistribution, alpha: f64) -> Result<f64> {
    check_order(alpha, true)?;
    Ok(if alpha == 1.0 {
        shannon_entropy(p)
    } else if alpha.is_infinite() {
        -p.max().ln()
    } else {
        p.power_sum(alpha).ln() / (1.0 - alpha)
    })
}

/// Tsallis entropy `(1−α)⁻¹ (Σ p_nᵅ − 1)`.
pub fn tsallis_entropy(p: &ProbabilityDistribution, alpha: f64) -> Result<f64> {
    check_order(alpha, false)?;
    Ok(if alpha == 1.0 {
        shannon_entropy(p)
    } else {
        (p.power_sum(alpha) - 1.0) / (1.0 - alpha)
    })
}

/// `ln_α(x) = (x^(1−α) − 1)/(1−α)`, `ln x` at `α = 1`.
pub fn alpha_log(x: f64, alpha: f64) -> Result<f64> {
    check_order(alpha, false)?;
    if !(x > 0.0) {
        return invalid(format!("alpha-logarithm needs x > 0, got {x}"));
    }
    Ok(if alpha == 1.0 {
        x.ln()
    } else {
        (x.powf(1.0 - alpha) - 1.0) / (1.0 - alpha)
    })
}

/// `h_α(η) = −ηᵅ ln_α η − (1−η)ᵅ ln_α(1−η)`.
pub fn binary_tsallis(eta: f64, alpha: f64) -> Result<f64> {
    check_order(alpha, false)?;
    if !(0.0..=1.0).contains(&eta) {
        return invalid(format!("efficiency must lie in [0, 1], got {eta}"));
    }
    let term = |x: f64| -> Result<f64> {
        if x == 0.0 {
            Ok(0.0)
        } else {
            Ok(-x.powf(alpha) * alpha_log(x, alpha)?)
        }
    };
    Ok(term(eta)? + term(1.0 - eta)?)
}

/// A distribution recorded with detector efficiency `η`: outcome masses are
/// scaled by `η` and a final no-click slot carries `1 − η`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortedDistribution {
    eta: f64,
    base: ProbabilityDistribution,
    extended: ProbabilityDistribution,
}

impl DistortedDistribution {
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn base(&self) -> &ProbabilityDistribution {
        &self.base
    }

    pub fn extended(&self) -> &ProbabilityDistribution {
        &self.extended
    }

    pub fn no_click(&self) -> f64 {
        *self.extended.probs.last().expect("extended distribution is non-empty")
    }
}

pub fn distort(p: &ProbabilityDistribution, eta: f64) -> Result<DistortedDistribution> {
    if !(0.0..=1.0).contains(&eta) {
        return invalid(format!("efficiency must lie in [0, 1], got {eta}"));
    }
    let mut probs: Vec<f64> = p.probs.iter().map(|&x| eta * x).collect();
    probs.push(1.0 - eta);
    Ok(DistortedDistribution {
        eta,
        base: p.clone(),
        extended: ProbabilityDistribution { probs },
    })
}

/// Lower bound on `R_α` from the collision and min-entropies, `α ∈ [2, ∞]`:
/// `(α−1)⁻¹ R₂ + (α−2)(α−1)⁻¹ R_∞`.
pub fn renyi_interpolation_bound(r2: f64, rinf: f64, alpha: f64) -> Result<f64> {
    if !(alpha >= 2.0) {
        return invalid(format!("interpolation bound needs alpha >= 2, got {alpha}"));
    }
    const SLACK: f64 = 1e-12;
    if r2 < rinf - SLACK || r2 > 2.0 * rinf + SLACK {
        return invalid(format!(
            "inconsistent entropies: need R_inf <= R_2 <= 2 R_inf, got R_2 = {r2}, R_inf = {rinf}"
        ));
    }
    Ok(if alpha.is_infinite() {
        rinf
    } else {
        (r2 + (alpha - 2.0) * rinf) / (alpha - 1.0)
    })
}

/// The collision-only bound `α / (2(α−1)) · R₂`, `α ≥ 2`.
pub fn collision_only_bound(r2: f64, alpha: f64) -> Result<f64> {
    if !(alpha >= 2.0) {
        return invalid(format!("collision bound needs alpha >= 2, got {alpha}"));
    }
    Ok(if alpha.is_infinite() {
        0.5 * r2
    } else {
        alpha / (2.0 * (alpha - 1.0)) * r2
    })
}
