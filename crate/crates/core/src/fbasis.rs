//! Traceless operator bases.
//!
//! [`gell_mann_basis`] produces the generalized Gell-Mann matrices: `d²−1`
//! traceless Hermitian generators with `Tr(G_j G_k) = 2 δ_jk`. The
//! generators are split into `d+1` blocks of `d−1` members, and each block
//! yields `d` operators `F_n^(b)` with
//!
//! ```text
//! Tr(F_m^(a) F_n^(b)) = 0                                      (a ≠ b)
//! Tr(F_m^(b) F_n^(b)) = (1+√d)² [δ_mn (d−1) − (1−δ_mn)]
//! ```
//!
//! Within block `b` with orthonormal members `G'_1..G'_{d−1}` and
//! `F = Σ_k G'_k`:
//!
//! ```text
//! F_n = F − (d+√d) G'_n     (n < d)
//! F_d = (1+√d) F
//! ```

use num_complex::Complex64;

use crate::error::{invalid, MumError, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::tol;

/// Generalized Gell-Mann generators of SU(d).
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<HermitianOperator>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[HermitianOperator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Builds the `d²−1` generators, ordered: symmetric off-diagonal pairs,
/// antisymmetric pairs, then diagonals (each group lexicographic).
pub fn gell_mann_basis(d: usize) -> Result<GeneratorBasis> {
    if d < 2 {
        return invalid(format!("dimension must be at least 2, got {d}"));
    }
    let mut generators = Vec::with_capacity(d * d - 1);
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|j| (j + 1..d).map(move |k| (j, k))).collect();

    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(j, k)] = Complex64::new(1.0, 0.0);
        m[(k, j)] = Complex64::new(1.0, 0.0);
        generators.push(HermitianOperator::new(m)?);
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(j, k)] = Complex64::new(0.0, -1.0);
        m[(k, j)] = Complex64::new(0.0, 1.0);
        generators.push(HermitianOperator::new(m)?);
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let diag: Vec<f64> = (0..d)
            .map(|i| match i.cmp(&l) {
                std::cmp::Ordering::Less => norm,
                std::cmp::Ordering::Equal => -(l as f64) * norm,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect();
        generators.push(HermitianOperator::from_diag(&diag));
    }
    Ok(GeneratorBasis { dim: d, generators })
}

/// The operators `F_n^(b)`, `b ∈ 0..=d`, `n ∈ 0..d` (zero-based).
#[derive(Debug, Clone)]
pub struct FFamily {
    dim: usize,
    operators: Vec<Vec<HermitianOperator>>,
}

impl FFamily {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> usize {
        self.operators.len()
    }

    pub fn block(&self, b: usize) -> &[HermitianOperator] {
        &self.operators[b]
    }

    pub fn get(&self, b: usize, n: usize) -> &HermitianOperator {
        &self.operators[b][n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[HermitianOperator]> {
        self.operators.iter().map(Vec::as_slice)
    }

    /// `(1+√d)²`, the scale of the within-block Gram matrix.
    pub fn gram_scale(&self) -> f64 {
        let s = 1.0 + (self.dim as f64).sqrt();
        s * s
    }

    /// Expected `Tr(F_m^(a) F_n^(b))`.
    pub fn expected_gram(&self, a: usize, m: usize, b: usize, n: usize) -> f64 {
        if a != b {
            0.0
        } else if m == n {
            self.gram_scale() * (self.dim as f64 - 1.0)
        } else {
            -self.gram_scale()
        }
    }
}

pub fn build_f_family(d: usize) -> Result<FFamily> {
    let basis = gell_mann_basis(d)?;
    let sqrt_d = (d as f64).sqrt();
    // Gell-Mann generators have Tr(G²) = 2.
    let unit = std::f64::consts::FRAC_1_SQRT_2;
    let orthonormal: Vec<HermitianOperator> = basis.generators.iter().map(|g| g.scale(unit)).collect();

    let operators = orthonormal
        .chunks(d - 1)
        .map(|members| {
            let mut sum = HermitianOperator::new(ComplexMatrix::zeros(d, d))?;
            for g in members {
                sum = sum.add_scaled(1.0, g)?;
            }
            let mut block = Vec::with_capacity(d);
            for g in members {
                block.push(sum.add_scaled(-(d as f64 + sqrt_d), g)?);
            }
            block.push(sum.scale(1.0 + sqrt_d));
            Ok(block)
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(operators.len(), d + 1);
    Ok(FFamily { dim: d, operators })
}

/// Coefficients `r_n^(b)` of `ρ = I/d + Σ r_n^(b) F_n^(b)` in the gauge
/// `Σ_n r_n^(b) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FExpansion {
    dim: usize,
    coefficients: Vec<Vec<f64>>,
    block_sums: Vec<f64>,
}

impl FExpansion {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.coefficients
    }

    pub fn block_sums(&self) -> &[f64] {
        &self.block_sums
    }

    /// Rebuilds `I/d + Σ r F`.
    pub fn reconstruct(&self, family: &FFamily) -> Result<HermitianOperator> {
        if family.dim() != self.dim {
            return Err(MumError::DimensionMismatch {
                expected: self.dim,
                got: family.dim(),
            });
        }
        let mut rho = HermitianOperator::identity(self.dim).scale(1.0 / self.dim as f64);
        for (block, coeffs) in family.iter().zip(&self.coefficients) {
            for (f, &r) in block.iter().zip(coeffs) {
                rho = rho.add_scaled(r, f)?;
            }
        }
        Ok(rho)
    }

    /// `Tr(ρ²) = 1/d + (1+√d)² Σ_b (d Σ_n r_n² − R²)`.
    pub fn purity(&self) -> f64 {
        let d = self.dim as f64;
        let scale = (1.0 + d.sqrt()).powi(2);
        let quad: f64 = self
            .coefficients
            .iter()
            .zip(&self.block_sums)
            .map(|(r, &big_r)| d * r.iter().map(|x| x * x).sum::<f64>() - big_r * big_r)
            .sum();
        1.0 / d + scale * quad
    }

    /// `Tr(ρ F_n^(b)) = (1+√d)² (d r_n^(b) − R^(b))`.
    pub fn overlap(&self, b: usize, n: usize) -> f64 {
        let d = self.dim as f64;
        (1.0 + d.sqrt()).powi(2) * (d * self.coefficients[b][n] - self.block_sums[b])
    }
}

pub fn expand_in_f_basis(rho: &HermitianOperator, family: &FFamily) -> Result<FExpansion> {
    let d = family.dim();
    if rho.dim() != d {
        return Err(MumError::DimensionMismatch {
            expected: d,
            got: rho.dim(),
        });
    }
    let tr = rho.trace();
    if (tr - 1.0).abs() > tol::NORMALIZATION {
        return Err(MumError::NotNormalized(tr));
    }
    let denom = family.gram_scale() * d as f64;
    let coefficients = family
        .iter()
        .map(|block| {
            block
                .iter()
                .map(|f| Ok(crate::linalg::hs_inner(rho, f)? / denom))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let block_sums = coefficients.iter().map(|r| r.iter().sum()).collect();
    Ok(FExpansion {
        dim: d,
        coefficients,
        block_sums,
    })
}
