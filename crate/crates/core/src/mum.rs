//! Mutually unbiased measurements `P_n^(b) = I/d + t F_n^(b)`.

use serde::{Deserialize, Serialize};

use crate::entropy::ProbabilityDistribution;
use crate::error::{invalid, MumError, Result};
use crate::fbasis::{build_f_family, FFamily};
use crate::linalg::{hs_inner, ComplexMatrix, HermitianOperator};
use crate::tol::{self, Tolerances};

pub const SCHEMA_VERSION: &str = "mumkit/1";

/// A `d`-outcome POVM.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    elements: Vec<HermitianOperator>,
}

impl Povm {
    pub fn new(elements: Vec<HermitianOperator>) -> Result<Self> {
        let dim = match elements.first() {
            Some(e) => e.dim(),
            None => return invalid("POVM needs at least one element"),
        };
        if let Some(e) = elements.iter().find(|e| e.dim() != dim) {
            return Err(MumError::DimensionMismatch {
                expected: dim,
                got: e.dim(),
            });
        }
        Ok(Self { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self {
            dim: self.dim,
            elements: self.elements.iter().map(HermitianOperator::transpose).collect(),
        }
    }
}

/// `p_n = Tr(P_n ρ)`, with round-off negatives clamped.
pub fn measurement_probabilities(povm: &Povm, rho: &HermitianOperator) -> Result<ProbabilityDistribution> {
    if rho.dim() != povm.dim {
        return Err(MumError::DimensionMismatch {
            expected: povm.dim,
            got: rho.dim(),
        });
    }
    let tr = rho.trace();
    if (tr - 1.0).abs() > tol::NORMALIZATION {
        return Err(MumError::NotNormalized(tr));
    }
    let probs = povm
        .elements
        .iter()
        .map(|p| hs_inner(p, rho))
        .collect::<Result<Vec<f64>>>()?;
    ProbabilityDistribution::from_clamped(probs)
}

/// `κ = 1/d + t² (1+√d)² (d−1)`.
pub fn efficiency_from_t(d: usize, t: f64) -> f64 {
    let df = d as f64;
    1.0 / df + t * t * (1.0 + df.sqrt()).powi(2) * (df - 1.0)
}

/// Largest interval of `t` for which every `I/d + t F_n^(b)` is PSD.
pub fn admissible_t_interval(family: &FFamily) -> Result<(f64, f64)> {
    let inv_d = 1.0 / family.dim() as f64;
    let mut hi = f64::INFINITY;
    let mut lo = f64::NEG_INFINITY;
    for block in family.iter() {
        for f in block {
            let ev = f.eigenvalues()?;
            let (min, max) = (ev[0], ev[ev.len() - 1]);
            if min < 0.0 {
                hi = hi.min(inv_d / -min);
            }
            if max > 0.0 {
                lo = lo.max(-inv_d / max);
            }
        }
    }
    Ok((lo, hi))
}

/// An ordered set of `M` measurements sharing efficiency `κ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MumSet {
    dim: usize,
    t: f64,
    kappa: f64,
    povms: Vec<Povm>,
}

/// Worst residual of each MUM axiom over a set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MumResiduals {
    /// `max |Tr(P_n) − 1|`
    pub unit_trace: f64,
    /// `max ‖Σ_n P_n − I‖_max`
    pub completeness: f64,
    /// Smallest eigenvalue among all elements.
    pub min_eigenvalue: f64,
    /// Largest eigenvalue among all elements.
    pub max_eigenvalue: f64,
    /// `max |Tr(P_m^(a) P_n^(b)) − 1/d|` over `a ≠ b`.
    pub cross_block: f64,
    /// Deviation from `δ_mn κ + (1−δ_mn)(1−κ)/(d−1)`.
    pub within_block: f64,
    /// `|κ − (1/d + t²(1+√d)²(d−1))|`.
    pub kappa_formula: f64,
    /// Distance of `κ` outside `[1/d, 1]` (zero when inside).
    pub kappa_range: f64,
}

impl MumResiduals {
    /// Largest axiom residual; PSD violation counts as `−min_eigenvalue`.
    pub fn max_residual(&self) -> f64 {
        [
            self.unit_trace,
            self.completeness,
            (-self.min_eigenvalue).max(0.0),
            self.cross_block,
            self.within_block,
            self.kappa_formula,
            self.kappa_range,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: &Tolerances) -> bool {
        self.unit_trace <= tol.axiom
            && self.completeness <= tol.axiom
            && self.min_eigenvalue >= -tol.psd
            && self.max_eigenvalue <= 1.0 + tol.psd
            && self.cross_block <= tol.axiom
            && self.within_block <= tol.axiom
            && self.kappa_formula <= tol.axiom
            && self.kappa_range <= 1e-12
    }
}

impl MumSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn povms(&self) -> &[Povm] {
        &self.povms
    }

    pub fn povm(&self, b: usize) -> &Povm {
        &self.povms[b]
    }

    /// Number of measurements `M`.
    pub fn len(&self) -> usize {
        self.povms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.povms.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.povms.len() == self.dim + 1
    }

    /// Outcome distributions of every measurement on `rho`.
    pub fn probabilities(&self, rho: &HermitianOperator) -> Result<Vec<ProbabilityDistribution>> {
        self.povms.iter().map(|p| measurement_probabilities(p, rho)).collect()
    }

    /// Element-wise transpose in the computational basis.
    pub fn transpose(&self) -> Self {
        Self {
            dim: self.dim,
            t: self.t,
            kappa: self.kappa,
            povms: self.povms.iter().map(Povm::transpose).collect(),
        }
    }

    /// The first `m` measurements.
    pub fn truncated(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.povms.len() {
            return invalid(format!("cannot take {m} of {} measurements", self.povms.len()));
        }
        Ok(Self {
            povms: self.povms[..m].to_vec(),
            ..self.clone()
        })
    }

    /// Recomputes every MUM axiom from the stored matrices.
    pub fn residuals(&self) -> Result<MumResiduals> {
        let d = self.dim;
        let df = d as f64;
        let identity = ComplexMatrix::identity(d);
        let mut r = MumResiduals {
            unit_trace: 0.0,
            completeness: 0.0,
            min_eigenvalue: f64::INFINITY,
            max_eigenvalue: f64::NEG_INFINITY,
            cross_block: 0.0,
            within_block: 0.0,
            kappa_formula: (self.kappa - efficiency_from_t(d, self.t)).abs(),
            kappa_range: (1.0 / df - self.kappa).max(self.kappa - 1.0).max(0.0),
        };
        let off = (1.0 - self.kappa) / (df - 1.0);
        for (a, pa) in self.povms.iter().enumerate() {
            let mut sum = ComplexMatrix::zeros(d, d);
            for (m, e) in pa.elements.iter().enumerate() {
                r.unit_trace = r.unit_trace.max((e.trace() - 1.0).abs());
                sum.axpy(1.0, e.matrix())?;
                let ev = e.eigenvalues()?;
                r.min_eigenvalue = r.min_eigenvalue.min(ev[0]);
                r.max_eigenvalue = r.max_eigenvalue.max(ev[ev.len() - 1]);
                for (n, f) in pa.elements.iter().enumerate() {
                    let want = if m == n { self.kappa } else { off };
                    r.within_block = r.within_block.max((hs_inner(e, f)? - want).abs());
                }
                for pb in self.povms.iter().skip(a + 1) {
                    for f in &pb.elements {
                        r.cross_block = r.cross_block.max((hs_inner(e, f)? - 1.0 / df).abs());
                    }
                }
            }
            r.completeness = r.completeness.max(sum.max_abs_diff(&identity));
        }
        Ok(r)
    }

    pub fn to_document(&self) -> MumSetDocument {
        MumSetDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            d: self.dim,
            t: self.t,
            kappa: self.kappa,
            povms: self
                .povms
                .iter()
                .map(|p| {
                    p.elements
                        .iter()
                        .map(|e| e.matrix().as_slice().iter().map(|z| [z.re, z.im]).collect())
                        .collect()
                })
                .collect(),
            library_version: None,
            config: None,
            residuals: None,
        }
    }

    pub fn from_document(doc: &MumSetDocument) -> Result<Self> {
        if doc.schema_version != SCHEMA_VERSION {
            return invalid(format!(
                "unsupported schema {:?}, expected {SCHEMA_VERSION:?}",
                doc.schema_version
            ));
        }
        let d = doc.d;
        if d < 2 || doc.povms.is_empty() || doc.povms.len() > d + 1 {
            return invalid(format!("document has d = {d} with {} measurements", doc.povms.len()));
        }
        let povms = doc
            .povms
            .iter()
            .map(|elements| {
                if elements.len() != d {
                    return Err(MumError::DimensionMismatch {
                        expected: d,
                        got: elements.len(),
                    });
                }
                let ops = elements
                    .iter()
                    .map(|entries| {
                        let data = entries
                            .iter()
                            .map(|&[re, im]| num_complex::Complex64::new(re, im))
                            .collect();
                        HermitianOperator::new(ComplexMatrix::from_vec(d, d, data)?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Povm::new(ops)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: d,
            t: doc.t,
            kappa: doc.kappa,
            povms,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: MumSetDocument = serde_json::from_str(s)?;
        Self::from_document(&doc)
    }
}

/// On-disk form of a [`MumSet`]; each element is a row-major list of
/// `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MumSetDocument {
    pub schema_version: String,
    pub d: usize,
    pub t: f64,
    pub kappa: f64,
    pub povms: Vec<Vec<Vec<[f64; 2]>>>,
    /// Provenance written by the CLI; ignored when loading.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub library_version: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuals: Option<MumResiduals>,
}

/// Builds the first `m` measurements of the complete set at parameter `t`.
pub fn build_mum_set(d: usize, t: f64, m: usize) -> Result<MumSet> {
    let family = build_f_family(d)?;
    build_mum_set_from_family(&family, t, m)
}

/// Builds at the largest admissible `t`.
pub fn build_max_efficiency(d: usize, m: usize) -> Result<MumSet> {
    let family = build_f_family(d)?;
    let (_, hi) = admissible_t_interval(&family)?;
    build_mum_set_from_family(&family, hi, m)
}

pub fn build_mum_set_from_family(family: &FFamily, t: f64, m: usize) -> Result<MumSet> {
    let d = family.dim();
    if m == 0 || m > d + 1 {
        return invalid(format!("number of measurements must lie in 1..={}, got {m}", d + 1));
    }
    if !t.is_finite() {
        return invalid(format!("t must be finite, got {t}"));
    }
    let (lo, hi) = admissible_t_interval(family)?;
    // Relative slack so that t = t_hi computed elsewhere is accepted.
    let slack = 1e-12 * lo.abs().max(hi.abs());
    if t > hi + slack || t < lo - slack {
        let inv_d = 1.0 / d as f64;
        let mut worst = (0, 0, f64::INFINITY);
        for (b, block) in family.iter().enumerate() {
            for (n, f) in block.iter().enumerate() {
                let ev = f.eigenvalues()?;
                let e = (inv_d + t * ev[0]).min(inv_d + t * ev[ev.len() - 1]);
                if e < worst.2 {
                    worst = (b, n, e);
                }
            }
        }
        return Err(MumError::TOutOfRange {
            t,
            lo,
            hi,
            block: worst.0,
            outcome: worst.1,
            eigenvalue: worst.2,
        });
    }
    let base = HermitianOperator::identity(d).scale(1.0 / d as f64);
    let povms = family
        .iter()
        .take(m)
        .map(|block| {
            let elements = block
                .iter()
                .map(|f| base.add_scaled(t, f))
                .collect::<Result<Vec<_>>>()?;
            Povm::new(elements)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MumSet {
        dim: d,
        t,
        kappa: efficiency_from_t(d, t),
        povms,
    })
}
