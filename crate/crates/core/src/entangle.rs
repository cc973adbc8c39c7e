//! Bipartite states and entanglement criteria built from two local MUM sets.
//!
//! The correlation measure is `J_M = Σ_b Σ_n P^(b)(n, n)` where
//! `P^(b)(m, n) = Tr[(P_m^(b) ⊗ Q_n^(b)) ρ_AB]`. Three upper bounds are
//! provided: one for product states with known reduced purities, one for
//! product states with known joint purity, and one for every separable state.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, MumError, Result};
use crate::linalg::{kron, partial_trace, ComplexMatrix, HermitianOperator, Subsystem};
use crate::mum::MumSet;
use crate::tol::{self, Tolerances};
use crate::uncertainty::{check_count, check_kappa, check_purity};

/// A density matrix on `C^d ⊗ C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    d: usize,
    rho: HermitianOperator,
    purity: f64,
}

impl BipartiteState {
    /// Validates unit trace and positivity.
    pub fn new(rho: HermitianOperator) -> Result<Self> {
        let d = crate::linalg::local_dimension(rho.matrix())?;
        let tr = rho.trace();
        if (tr - 1.0).abs() > tol::NORMALIZATION {
            return Err(MumError::NotNormalized(tr));
        }
        let min = rho.eigenvalues()?[0];
        if min < -tol::PSD {
            return Err(MumError::Invariant(format!("state has negative eigenvalue {min:e}")));
        }
        Ok(Self::new_unchecked(d, rho))
    }

    fn new_unchecked(d: usize, rho: HermitianOperator) -> Self {
        let purity = rho.purity();
        Self { d, rho, purity }
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn product(a: &HermitianOperator, b: &HermitianOperator) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(MumError::DimensionMismatch {
                expected: a.dim(),
                got: b.dim(),
            });
        }
        let rho = HermitianOperator::new(kron(a.matrix(), b.matrix()))?;
        Ok(Self::new_unchecked(a.dim(), rho))
    }

    /// Convex combination `Σ_k w_k ρ_k`; weights must be a distribution.
    pub fn mixture(weights: &[f64], states: &[BipartiteState]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return invalid("mixture needs one weight per component");
        }
        let d = states[0].d;
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w < 0.0) || (sum - 1.0).abs() > tol::NORMALIZATION {
            return invalid("mixture weights must be a probability distribution");
        }
        let mut acc = ComplexMatrix::zeros(d * d, d * d);
        for (w, s) in weights.iter().zip(states) {
            if s.d != d {
                return Err(MumError::DimensionMismatch { expected: d, got: s.d });
            }
            acc.axpy(*w, s.rho.matrix())?;
        }
        Ok(Self::new_unchecked(d, HermitianOperator::new(acc)?))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rho(&self) -> &HermitianOperator {
        &self.rho
    }

    pub fn purity(&self) -> f64 {
        self.purity
    }

    /// `ρ_A = Tr_B ρ`.
    pub fn reduced_a(&self) -> Result<HermitianOperator> {
        HermitianOperator::new(partial_trace(self.rho.matrix(), Subsystem::B, self.d)?)
    }

    /// `ρ_B = Tr_A ρ`.
    pub fn reduced_b(&self) -> Result<HermitianOperator> {
        HermitianOperator::new(partial_trace(self.rho.matrix(), Subsystem::A, self.d)?)
    }
}

/// `|Φ⁺⟩ = d^{-1/2} Σ_i |i⟩|i⟩`.
pub fn maximally_entangled(d: usize) -> Result<BipartiteState> {
    if d < 2 {
        return invalid(format!("dimension must be at least 2, got {d}"));
    }
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut psi = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        psi[i * d + i] = amp;
    }
    Ok(BipartiteState::new_unchecked(d, HermitianOperator::projector(&psi)))
}

/// `γ |Φ⁺⟩⟨Φ⁺| + (1 − γ) I/d²`.
pub fn isotropic_state(d: usize, gamma: f64) -> Result<BipartiteState> {
    if !(0.0..=1.0).contains(&gamma) {
        return invalid(format!("isotropic weight must lie in [0, 1], got {gamma}"));
    }
    let phi = maximally_entangled(d)?;
    let n = d * d;
    let noise = HermitianOperator::identity(n).scale((1.0 - gamma) / n as f64);
    let rho = noise.add_scaled(gamma, phi.rho())?;
    Ok(BipartiteState::new_unchecked(d, rho))
}

/// Transposes every element in the computational basis. Paired with the
/// A-side set on `|Φ⁺⟩`, each same-outcome overlap equals `κ/d`.
pub fn conjugate_mum(mums: &MumSet) -> MumSet {
    mums.transpose()
}

fn check_pair(a: &MumSet, b: &MumSet, state: &BipartiteState) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(MumError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if a.len() != b.len() {
        return invalid(format!("local sets differ in size: {} vs {}", a.len(), b.len()));
    }
    if state.d != a.dim() {
        return Err(MumError::DimensionMismatch {
            expected: a.dim(),
            got: state.d,
        });
    }
    Ok(())
}

// Tr[(P ⊗ Q) ρ] = Σ_{ijkl} P_ij Q_kl ρ_{(j,l),(i,k)}, O(d⁴).
fn local_pair_expectation(p: &ComplexMatrix, q: &ComplexMatrix, rho: &ComplexMatrix, d: usize) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            let pij = p[(i, j)];
            if pij == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut inner = Complex64::new(0.0, 0.0);
            for k in 0..d {
                for l in 0..d {
                    inner += q[(k, l)] * rho[(j * d + l, i * d + k)];
                }
            }
            acc += pij * inner;
        }
    }
    acc.re
}

fn clamp_probability(p: f64) -> Result<f64> {
    if p < -tol::PROBABILITY_CLAMP {
        Err(MumError::NegativeProbability(p))
    } else {
        Ok(p.max(0.0))
    }
}

/// `P^(b)(m, n)` for the `b`-th joint measurement (zero-based indices).
pub fn joint_probability(
    mums_a: &MumSet,
    mums_b: &MumSet,
    state: &BipartiteState,
    b: usize,
    m: usize,
    n: usize,
) -> Result<f64> {
    check_pair(mums_a, mums_b, state)?;
    let d = state.d;
    if b >= mums_a.len() || m >= d || n >= d {
        return invalid(format!(
            "index out of range: block {b} of {}, outcomes ({m}, {n}) of {d}",
            mums_a.len()
        ));
    }
    let p = mums_a.povm(b).elements()[m].matrix();
    let q = mums_b.povm(b).elements()[n].matrix();
    clamp_probability(local_pair_expectation(p, q, state.rho.matrix(), d))
}

/// Same joint probability via the explicit Kronecker product.
pub fn joint_probability_dense(
    mums_a: &MumSet,
    mums_b: &MumSet,
    state: &BipartiteState,
    b: usize,
    m: usize,
    n: usize,
) -> Result<f64> {
    check_pair(mums_a, mums_b, state)?;
    let p = mums_a.povm(b).elements()[m].matrix();
    let q = mums_b.povm(b).elements()[n].matrix();
    clamp_probability(kron(p, q).trace_of_product(state.rho.matrix())?.re)
}

/// `J_M = Σ_b Σ_n P^(b)(n, n)`.
pub fn correlation_measure(mums_a: &MumSet, mums_b: &MumSet, state: &BipartiteState) -> Result<f64> {
    check_pair(mums_a, mums_b, state)?;
    let d = state.d;
    let rho = state.rho.matrix();
    let mut j = 0.0;
    for (pa, pb) in mums_a.povms().iter().zip(mums_b.povms()) {
        for (p, q) in pa.elements().iter().zip(pb.elements()) {
            j += clamp_probability(local_pair_expectation(p.matrix(), q.matrix(), rho, d))?;
        }
    }
    Ok(j)
}

fn product_factor(m: usize, d: usize, kappa: f64, purity: f64) -> f64 {
    let (mf, df) = (m as f64, d as f64);
    let excess = (kappa * df - 1.0).max(0.0) * (purity * df - 1.0).max(0.0);
    ((mf * (df - 1.0) + excess) / (df * (df - 1.0))).sqrt()
}

/// Upper bound on `J_M` for product states with reduced purities
/// `purity_a`, `purity_b`.
pub fn product_bound(m: usize, d: usize, kappa_a: f64, kappa_b: f64, purity_a: f64, purity_b: f64) -> Result<f64> {
    check_count(m, d)?;
    check_kappa(d, kappa_a)?;
    check_kappa(d, kappa_b)?;
    check_purity(d, purity_a)?;
    check_purity(d, purity_b)?;
    Ok(product_factor(m, d, kappa_a, purity_a) * product_factor(m, d, kappa_b, purity_b))
}

/// Upper bound on `J_M` for product states given only `Tr(ρ_AB²)`, both
/// sides sharing efficiency `κ`:
/// `√(Γ² + (κd−1)[Γd + (M+κd−1)(d−1)d Tr(ρ_AB²)]) / (d(d−1))`,
/// `Γ = M(d−1) − (κd−1)`.
pub fn product_bound_from_joint_purity(m: usize, d: usize, kappa: f64, joint_purity: f64) -> Result<f64> {
    check_count(m, d)?;
    check_kappa(d, kappa)?;
    let (mf, df) = (m as f64, d as f64);
    if !(joint_purity >= 1.0 / (df * df) - 1e-10 && joint_purity <= 1.0 + 1e-10) {
        return invalid(format!("joint purity must lie in [1/d², 1], got {joint_purity}"));
    }
    let k = (kappa * df - 1.0).max(0.0);
    let gamma = mf * (df - 1.0) - k;
    let radicand = gamma * gamma + k * (gamma * df + (mf + k) * (df - 1.0) * df * joint_purity);
    Ok(radicand.max(0.0).sqrt() / (df * (df - 1.0)))
}

/// Upper bound on `J_M` for every separable state:
/// `√(M + κ_A d − 1) √(M + κ_B d − 1) / d`.
pub fn separability_bound(m: usize, d: usize, kappa_a: f64, kappa_b: f64) -> Result<f64> {
    check_count(m, d)?;
    check_kappa(d, kappa_a)?;
    check_kappa(d, kappa_b)?;
    let (mf, df) = (m as f64, d as f64);
    Ok((mf + kappa_a * df - 1.0).sqrt() * (mf + kappa_b * df - 1.0).sqrt() / df)
}

/// `J_M` of the isotropic state measured with a set and its conjugate:
/// `M (γκ + (1 − γ)/d)`.
pub fn isotropic_j_closed_form(m: usize, d: usize, kappa: f64, gamma: f64) -> Result<f64> {
    check_count(m, d)?;
    check_kappa(d, kappa)?;
    if !(0.0..=1.0).contains(&gamma) {
        return invalid(format!("isotropic weight must lie in [0, 1], got {gamma}"));
    }
    Ok(m as f64 * (gamma * kappa + (1.0 - gamma) / d as f64))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionVerdict {
    pub j_value: f64,
    /// Product-state bound from the reduced purities, when they were used.
    pub bound_product: Option<f64>,
    /// Product-state bound from the joint purity; needs equal efficiencies.
    pub bound_purity: Option<f64>,
    pub bound_separable: f64,
    pub not_product: bool,
    pub not_product_by_purity: bool,
    /// One-sided: `false` never certifies separability.
    pub entangled: bool,
    pub note: Option<String>,
}

/// Evaluates `J_M` against all three criteria. A flag fires only when the
/// violation exceeds `tol.guard`.
pub fn detect(
    mums_a: &MumSet,
    mums_b: &MumSet,
    state: &BipartiteState,
    reduced_purities_known: bool,
    tol: &Tolerances,
) -> Result<DetectionVerdict> {
    check_pair(mums_a, mums_b, state)?;
    let (m, d) = (mums_a.len(), state.d);
    let (ka, kb) = (mums_a.kappa(), mums_b.kappa());
    let j = correlation_measure(mums_a, mums_b, state)?;

    let bound_product = if reduced_purities_known {
        let pa = state.reduced_a()?.purity();
        let pb = state.reduced_b()?.purity();
        Some(product_bound(m, d, ka, kb, pa, pb)?)
    } else {
        None
    };
    let bound_purity = if (ka - kb).abs() <= 1e-12 {
        Some(product_bound_from_joint_purity(m, d, ka, state.purity)?)
    } else {
        None
    };
    let bound_separable = separability_bound(m, d, ka, kb)?;

    let inv_d = 1.0 / d as f64;
    let trivial = ka - inv_d < 1e-12 || kb - inv_d < 1e-12;
    let exceeds = |bound: f64| j > bound + tol.guard;
    let mut verdict = DetectionVerdict {
        j_value: j,
        bound_product,
        bound_purity,
        bound_separable,
        not_product: bound_product.is_some_and(exceeds),
        not_product_by_purity: bound_purity.is_some_and(exceeds),
        entangled: exceeds(bound_separable),
        note: None,
    };
    if trivial {
        verdict.not_product = false;
        verdict.not_product_by_purity = false;
        verdict.entangled = false;
        verdict.note = Some("trivial efficiency κ = 1/d: measurements carry no information".to_string());
    } else if bound_purity.is_none() {
        verdict.note = Some("efficiencies differ; joint-purity criterion skipped".to_string());
    }
    Ok(verdict)
}
