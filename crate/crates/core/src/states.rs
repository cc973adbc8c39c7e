//! Seeded state generation.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)` and switched to stream `stream` via `set_stream`.
//! A `(seed, stream)` pair therefore names one reproducible sample, and
//! workers handling different streams never share generator state.
//! Complex Gaussians draw the real part then the imaginary part from
//! `StandardNormal`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::entangle::{isotropic_state, BipartiteState};
use crate::entropy::ProbabilityDistribution;
use crate::error::{invalid, MumError, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::tol;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Normalized vector of i.i.d. complex Gaussians.
pub fn random_unit_vector(d: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..d).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

pub fn random_pure_state(d: usize, rng: &mut impl Rng) -> HermitianOperator {
    HermitianOperator::projector(&random_unit_vector(d, rng))
}

/// `G†G / Tr(G†G)` with `G` a `d×d` complex Gaussian matrix.
pub fn random_mixed_state(d: usize, rng: &mut impl Rng) -> HermitianOperator {
    let g = ComplexMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let w = &g.adjoint() * &g;
    let tr = w.trace().re;
    HermitianOperator::new(w.scale(1.0 / tr)).expect("G†G is Hermitian")
}

pub fn completely_mixed(d: usize) -> HermitianOperator {
    HermitianOperator::identity(d).scale(1.0 / d as f64)
}

/// Flat-Dirichlet sample of length `n` (normalized unit exponentials).
pub fn random_distribution(n: usize, rng: &mut impl Rng) -> ProbabilityDistribution {
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    ProbabilityDistribution::from_clamped(w).expect("normalized exponentials form a distribution")
}

/// `ρ_A ⊗ ρ_B` with independent random local states, pure or mixed.
pub fn random_product_state(d: usize, mixed: bool, rng: &mut impl Rng) -> BipartiteState {
    let local = |r: &mut _| {
        if mixed {
            random_mixed_state(d, r)
        } else {
            random_pure_state(d, r)
        }
    };
    let a = local(rng);
    let b = local(rng);
    BipartiteState::product(&a, &b).expect("equal local dimensions")
}

/// Flat-Dirichlet mixture of `k` random pure product states, `k` uniform in
/// `2..=2d`.
pub fn random_separable_mixture(d: usize, rng: &mut impl Rng) -> BipartiteState {
    let k = rng.random_range(2..=2 * d);
    let weights = random_distribution(k, rng);
    let parts: Vec<BipartiteState> = (0..k).map(|_| random_product_state(d, false, rng)).collect();
    BipartiteState::mixture(weights.probs(), &parts).expect("valid mixture")
}

/// `Tr(ρ²)`.
pub fn purity(rho: &HermitianOperator) -> f64 {
    rho.purity()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    PureRandom,
    MixedRandom,
    CompletelyMixed,
    Isotropic,
    Product,
    SeparableMixture,
}

impl StateKind {
    pub fn is_bipartite(self) -> bool {
        matches!(self, Self::Isotropic | Self::Product | Self::SeparableMixture)
    }
}

/// A reproducible recipe for one state.
///
/// `params` is kind-specific: `[γ]` for `isotropic`, optionally `[1]` for a
/// `product` of mixed locals (pure locals otherwise). `d` is the local
/// dimension for bipartite kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub kind: StateKind,
    pub d: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub stream: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
}

impl StateSpec {
    pub fn new(kind: StateKind, d: usize, seed: u64, stream: u64) -> Self {
        Self {
            kind,
            d,
            seed,
            stream,
            params: Vec::new(),
        }
    }

    pub fn with_params(mut self, params: Vec<f64>) -> Self {
        self.params = params;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratedState {
    Single(HermitianOperator),
    Bipartite(BipartiteState),
}

impl GeneratedState {
    pub fn operator(&self) -> &HermitianOperator {
        match self {
            Self::Single(rho) => rho,
            Self::Bipartite(s) => s.rho(),
        }
    }

    pub fn purity(&self) -> f64 {
        self.operator().purity()
    }

    pub fn into_single(self) -> Result<HermitianOperator> {
        match self {
            Self::Single(rho) => Ok(rho),
            Self::Bipartite(_) => invalid("expected a single-system state"),
        }
    }

    pub fn into_bipartite(self) -> Result<BipartiteState> {
        match self {
            Self::Bipartite(s) => Ok(s),
            Self::Single(_) => invalid("expected a bipartite state"),
        }
    }
}

/// Unit trace and no eigenvalue below `-tol::PSD`.
pub fn validate_density(rho: &HermitianOperator) -> Result<()> {
    let tr = rho.trace();
    if (tr - 1.0).abs() > tol::NORMALIZATION {
        return Err(MumError::NotNormalized(tr));
    }
    let min = rho.eigenvalues()?[0];
    if min < -tol::PSD {
        return Err(MumError::Invariant(format!("state has negative eigenvalue {min:e}")));
    }
    Ok(())
}

pub fn generate(spec: &StateSpec) -> Result<GeneratedState> {
    let d = spec.d;
    if d < 2 {
        return invalid(format!("dimension must be at least 2, got {d}"));
    }
    let expect_params = |n: usize| -> Result<()> {
        if spec.params.len() > n {
            invalid(format!(
                "{:?} takes at most {n} parameters, got {}",
                spec.kind,
                spec.params.len()
            ))
        } else {
            Ok(())
        }
    };
    let mut r = rng(spec.seed, spec.stream);
    let state = match spec.kind {
        StateKind::PureRandom => {
            expect_params(0)?;
            GeneratedState::Single(random_pure_state(d, &mut r))
        }
        StateKind::MixedRandom => {
            expect_params(0)?;
            GeneratedState::Single(random_mixed_state(d, &mut r))
        }
        StateKind::CompletelyMixed => {
            expect_params(0)?;
            GeneratedState::Single(completely_mixed(d))
        }
        StateKind::Isotropic => {
            let gamma = match spec.params.as_slice() {
                [g] => *g,
                _ => return invalid("isotropic state needs exactly one parameter (gamma)"),
            };
            GeneratedState::Bipartite(isotropic_state(d, gamma)?)
        }
        StateKind::Product => {
            expect_params(1)?;
            let mixed = match spec.params.first() {
                None => false,
                Some(&x) if x == 0.0 || x == 1.0 => x == 1.0,
                Some(x) => return invalid(format!("product flag must be 0 or 1, got {x}")),
            };
            GeneratedState::Bipartite(random_product_state(d, mixed, &mut r))
        }
        StateKind::SeparableMixture => {
            expect_params(0)?;
            GeneratedState::Bipartite(random_separable_mixture(d, &mut r))
        }
    };
    validate_density(state.operator())?;
    Ok(state)
}
