//! Numerical tolerances.
//!
//! Every threshold used by the library lives here. The verification
//! drivers take a [`Tolerances`] value so a run can override individual
//! entries (`--tolerance KEY=VALUE` on the command line).

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{invalid, Result};

/// Maximum anti-Hermitian residue kept after symmetrization.
pub const HERMITIAN_RESIDUE: f64 = 1e-12;
/// Largest (A - A†)/2 correction accepted by the Hermitian constructor.
pub const HERMITIAN_REJECT: f64 = 1e-8;
/// Jacobi stopping threshold on the off-diagonal Frobenius norm.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Probabilities in [-CLAMP, 0) are rounded to zero.
pub const PROBABILITY_CLAMP: f64 = 1e-10;
/// Normalization slack for distributions and density matrices.
pub const NORMALIZATION: f64 = 1e-10;
/// PSD slack for eigenvalues.
pub const PSD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Slack allowed when checking an inequality bound.
    pub bound: f64,
    /// Slack allowed when checking an exact identity.
    pub identity: f64,
    /// Guard band a violation must exceed before a criterion flag fires.
    pub guard: f64,
    /// Residual allowed on MUM axioms.
    pub axiom: f64,
    pub psd: f64,
    pub normalization: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            bound: 1e-9,
            identity: 1e-8,
            guard: 1e-9,
            axiom: 1e-8,
            psd: PSD,
            normalization: NORMALIZATION,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 6] = ["bound", "identity", "guard", "axiom", "psd", "normalization"];

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return invalid(format!("tolerance {key} must be a nonnegative number, got {value}"));
        }
        let slot = match key {
            "bound" => &mut self.bound,
            "identity" => &mut self.identity,
            "guard" => &mut self.guard,
            "axiom" => &mut self.axiom,
            "psd" => &mut self.psd,
            "normalization" => &mut self.normalization,
            _ => {
                return invalid(format!(
                    "unknown tolerance key {key:?} (expected one of {:?})",
                    Self::KEYS
                ))
            }
        };
        *slot = value;
        Ok(())
    }

    /// Applies `KEY=VALUE` overrides.
    pub fn with_overrides(overrides: &BTreeMap<String, f64>) -> Result<Self> {
        let mut tol = Self::default();
        for (k, v) in overrides {
            tol.set(k, *v)?;
        }
        Ok(tol)
    }
}
