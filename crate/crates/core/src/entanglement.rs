//! Entanglement quantification: entropy of entanglement for pure states,
//! density-matrix materialization of heralded mixtures, partial transpose,
//! and logarithmic negativity.
//!
//! All logarithms are base 2, so every measure is reported in bits (e-bits).

use nalgebra::linalg::SymmetricEigen;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::fock::PureTwoMode;
use crate::subtraction::BranchEnsemble;

/// Eigenvalues of reduced densities below this are clipped to zero; anything
/// more negative is treated as a numerical-health failure.
pub const EIGENVALUE_CLIP: f64 = 1e-9;

/// Spectral weight below this counts as numerically-zero tail.
const SPECTRUM_FLOOR: f64 = 1e-12;

/// Which measure an [`EntanglementResult`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglementKind {
    Entropy,
    LogNegativity,
}

/// Spectral bookkeeping attached to every computed measure.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpectrumDiagnostics {
    /// Total spectral mass sitting below the numerical floor.
    pub spectrum_tail: f64,
    /// Mass removed by clipping small negative eigenvalues (or a negative
    /// final value) to zero.
    pub clipped_mass: f64,
}

/// An entanglement value in bits, together with its kind and diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementResult {
    pub value: f64,
    pub kind: EntanglementKind,
    pub diagnostics: SpectrumDiagnostics,
}

/// Two-mode density matrix on the tensor-product truncated space with flat
/// index m·(n_max+1) + n.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTwoMode {
    rho: DMatrix<Complex64>,
    side: usize,
}

impl DensityTwoMode {
    /// Projector onto the normalized version of a pure state.
    pub fn from_pure(state: &PureTwoMode) -> Result<Self> {
        let normalized = state.normalize()?;
        let side = normalized.dim();
        let dim = side * side;
        let mut rho = DMatrix::zeros(dim, dim);
        accumulate_projector(&mut rho, &normalized, 1.0, side);
        Ok(Self { rho, side })
    }

    /// Side of the underlying single-mode space, n_max + 1.
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn n_max(&self) -> usize {
        self.side - 1
    }

    /// Flat matrix dimension, (n_max + 1)².
    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        (0..self.rho.nrows()).map(|i| self.rho[(i, i)].re).sum()
    }
}

fn accumulate_projector(rho: &mut DMatrix<Complex64>, state: &PureTwoMode, weight: f64, side: usize) {
    // rho += weight · |ψ⟩⟨ψ| with flat index m·side + n.
    let dim = side * side;
    let mut vec = Vec::with_capacity(dim);
    for m in 0..side {
        for n in 0..side {
            vec.push(state.coeff(m, n));
        }
    }
    for (i, &vi) in vec.iter().enumerate() {
        if vi.norm_sqr() == 0.0 {
            continue;
        }
        for (j, &vj) in vec.iter().enumerate() {
            rho[(i, j)] += vi * vj.conj() * weight;
        }
    }
}

/// Materialize a heralded mixture, ρ = (1/P) Σ w · |ψ⟩⟨ψ|.
pub fn density_from_ensemble(ensemble: &BranchEnsemble) -> Result<DensityTwoMode> {
    if ensemble.success_prob <= 0.0 {
        return Err(FockError::DegenerateState(
            "ensemble has zero success probability".into(),
        ));
    }
    let side = ensemble
        .n_max()
        .ok_or_else(|| FockError::DegenerateState("ensemble has no branches".into()))?
        + 1;
    let dim = side * side;
    let mut rho = DMatrix::zeros(dim, dim);
    for branch in &ensemble.branches {
        if branch.state.dim() != side {
            return Err(FockError::DimensionMismatch(
                "branches live on different truncated spaces".into(),
            ));
        }
        if branch.herald_weight == 0.0 {
            continue;
        }
        accumulate_projector(
            &mut rho,
            &branch.state,
            branch.herald_weight / ensemble.success_prob,
            side,
        );
    }
    let density = DensityTwoMode { rho, side };
    let trace = density.trace();
    if (trace - 1.0).abs() > 1e-10 {
        return Err(FockError::NumericalHealth(format!(
            "materialized density has trace {trace}"
        )));
    }
    Ok(density)
}

/// Partial transpose with respect to mode A:
/// element ((m,n),(m′,n′)) ↦ ((m′,n),(m,n′)). Involutive, Hermitian image.
pub fn partial_transpose(rho: &DensityTwoMode) -> DMatrix<Complex64> {
    let side = rho.side;
    let dim = side * side;
    let mut pt = DMatrix::zeros(dim, dim);
    for m in 0..side {
        for n in 0..side {
            for mp in 0..side {
                for np in 0..side {
                    pt[(mp * side + n, m * side + np)] =
                        rho.rho[(m * side + n, mp * side + np)];
                }
            }
        }
    }
    pt
}

/// Schmidt coefficients (singular values of the normalized coefficient
/// matrix), sorted in descending order.
pub fn schmidt_coefficients(state: &PureTwoMode) -> Result<Vec<f64>> {
    let normalized = state.normalize()?;
    let mut sigma: Vec<f64> = normalized
        .coeffs()
        .clone()
        .singular_values()
        .iter()
        .copied()
        .collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    Ok(sigma)
}

/// Entropy of entanglement E_S = −Σ σᵢ² log₂ σᵢ² over the Schmidt spectrum
/// of a pure two-mode state (normalized internally).
pub fn entropy_of_entanglement(state: &PureTwoMode) -> Result<EntanglementResult> {
    let sigma = schmidt_coefficients(state)?;
    let mut value = 0.0;
    let mut tail = 0.0;
    for s in sigma {
        let p = s * s;
        if p > 0.0 {
            value -= p * p.log2();
        }
        if p < SPECTRUM_FLOOR {
            tail += p;
        }
    }
    Ok(EntanglementResult {
        value: value.max(0.0),
        kind: EntanglementKind::Entropy,
        diagnostics: SpectrumDiagnostics {
            spectrum_tail: tail,
            clipped_mass: 0.0,
        },
    })
}

/// Reduced density matrix of mode A of the normalized state, ρ_A = C·C†.
pub fn reduced_mode_a(state: &PureTwoMode) -> Result<DMatrix<Complex64>> {
    let normalized = state.normalize()?;
    let c = normalized.coeffs();
    Ok(c * c.adjoint())
}

/// Reduced density matrix of mode B of the normalized state, ρ_B = (C†·C)ᵀ.
pub fn reduced_mode_b(state: &PureTwoMode) -> Result<DMatrix<Complex64>> {
    let normalized = state.normalize()?;
    let c = normalized.coeffs();
    Ok((c.adjoint() * c).transpose())
}

/// Hermitian eigenvalues (ascending) after symmetrizing away rounding noise.
pub fn hermitian_eigenvalues(matrix: &DMatrix<Complex64>) -> Vec<f64> {
    let symmetrized = (matrix + matrix.adjoint()) * Complex64::from(0.5);
    let mut eigs: Vec<f64> = SymmetricEigen::new(symmetrized)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    eigs
}

/// Von Neumann entropy (bits) of a Hermitian density matrix. Eigenvalues in
/// (−EIGENVALUE_CLIP, 0) are clipped to zero; anything more negative is a
/// numerical-health error.
pub fn entropy_of_density(rho: &DMatrix<Complex64>) -> Result<(f64, SpectrumDiagnostics)> {
    let mut value = 0.0;
    let mut diagnostics = SpectrumDiagnostics::default();
    for p in hermitian_eigenvalues(rho) {
        if p < -EIGENVALUE_CLIP {
            return Err(FockError::NumericalHealth(format!(
                "density eigenvalue {p} below clip threshold"
            )));
        }
        if p <= 0.0 {
            diagnostics.clipped_mass += p.abs();
            continue;
        }
        if p < SPECTRUM_FLOOR {
            diagnostics.spectrum_tail += p;
        }
        value -= p * p.log2();
    }
    Ok((value.max(0.0), diagnostics))
}

/// Logarithmic negativity E_N = log₂ ‖ρ^{T_A}‖₁, the trace norm evaluated
/// through the Hermitian eigenvalues of the partial transpose, clipped at
/// zero from below.
pub fn log_negativity(rho: &DensityTwoMode) -> Result<EntanglementResult> {
    let pt = partial_transpose(rho);
    let eigs = hermitian_eigenvalues(&pt);
    let mut trace_norm = 0.0;
    let mut tail = 0.0;
    for e in eigs {
        trace_norm += e.abs();
        if e.abs() < SPECTRUM_FLOOR {
            tail += e.abs();
        }
    }
    if trace_norm <= 0.0 {
        return Err(FockError::DegenerateState(
            "partial transpose has zero trace norm".into(),
        ));
    }
    let raw = trace_norm.log2();
    Ok(EntanglementResult {
        value: raw.max(0.0),
        kind: EntanglementKind::LogNegativity,
        diagnostics: SpectrumDiagnostics {
            spectrum_tail: tail,
            clipped_mass: if raw < 0.0 { -raw } else { 0.0 },
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{qutrit_state, split_smsv, SplitterParam, SqueezeParam};
    use crate::subtraction::{mixed_output_single, Branch, BranchLabel, SubtractionParams};
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell_like(n_max: usize) -> PureTwoMode {
        let mut m = DMatrix::zeros(n_max + 1, n_max + 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        m[(0, 1)] = c(s);
        m[(1, 0)] = c(s);
        PureTwoMode::from_coeffs(m).unwrap()
    }

    #[test]
    fn entropy_of_bell_like_state() {
        let e = entropy_of_entanglement(&bell_like(2)).unwrap();
        assert_abs_diff_eq!(e.value, 1.0, epsilon = 1e-12);
        assert_eq!(e.kind, EntanglementKind::Entropy);
    }

    #[test]
    fn entropy_of_balanced_two_photon_state() {
        let q = qutrit_state(&SplitterParam::balanced(), 4).unwrap();
        let e = entropy_of_entanglement(&q).unwrap();
        assert_abs_diff_eq!(e.value, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn entropy_of_maximally_entangled_qutrit() {
        let mut m = DMatrix::zeros(3, 3);
        let s = 1.0 / 3.0f64.sqrt();
        for i in 0..3 {
            m[(i, i)] = c(s);
        }
        let state = PureTwoMode::from_coeffs(m).unwrap();
        let e = entropy_of_entanglement(&state).unwrap();
        assert_abs_diff_eq!(e.value, 3.0f64.log2(), epsilon = 1e-12);
    }

    #[test]
    fn entropy_matches_binary_entropy_oracle() {
        // r|0,1⟩ + t|1,0⟩ with r² = 1/3 against h(p) computed directly.
        let big_r: f64 = 1.0 / 3.0;
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = c(big_r.sqrt());
        m[(1, 0)] = c((1.0 - big_r).sqrt());
        let state = PureTwoMode::from_coeffs(m).unwrap();
        let h = -big_r * big_r.log2() - (1.0 - big_r) * (1.0 - big_r).log2();
        let e = entropy_of_entanglement(&state).unwrap();
        assert_abs_diff_eq!(e.value, h, epsilon = 1e-12);
        assert_abs_diff_eq!(e.value, 0.9183, epsilon = 5e-5);
    }

    #[test]
    fn entropy_of_zero_state_fails() {
        assert!(entropy_of_entanglement(&PureTwoMode::zero(3)).is_err());
    }

    #[test]
    fn reduced_entropies_agree() {
        let lam = SqueezeParam::new(0.3).unwrap();
        let spl = SplitterParam::from_reflectance(0.4).unwrap();
        let state = split_smsv(&lam, &spl, 8).unwrap();
        let (ea, _) = entropy_of_density(&reduced_mode_a(&state).unwrap()).unwrap();
        let (eb, _) = entropy_of_density(&reduced_mode_b(&state).unwrap()).unwrap();
        assert_abs_diff_eq!(ea, eb, epsilon = 1e-8);
        let es = entropy_of_entanglement(&state).unwrap().value;
        assert_abs_diff_eq!(ea, es, epsilon = 1e-8);
    }

    #[test]
    fn single_branch_density_is_projector() {
        let state = bell_like(2);
        let ensemble = BranchEnsemble {
            success_prob: state.norm2(),
            branches: vec![Branch {
                label: BranchLabel::Single { k: 1 },
                state: state.clone(),
                herald_weight: 1.0,
            }],
        };
        let rho = density_from_ensemble(&ensemble).unwrap();
        let projector = DensityTwoMode::from_pure(&state).unwrap();
        let gap: f64 = rho
            .matrix()
            .iter()
            .zip(projector.matrix().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(gap < 1e-14);
        assert_abs_diff_eq!(rho.trace(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn orthogonal_branches_give_maximally_mixed_span() {
        let a = PureTwoMode::basis(1, 0, 1).unwrap();
        let b = PureTwoMode::basis(1, 1, 0).unwrap();
        let ensemble = BranchEnsemble {
            success_prob: 2.0,
            branches: vec![
                Branch {
                    label: BranchLabel::Single { k: 1 },
                    state: a,
                    herald_weight: 1.0,
                },
                Branch {
                    label: BranchLabel::Single { k: 2 },
                    state: b,
                    herald_weight: 1.0,
                },
            ],
        };
        let rho = density_from_ensemble(&ensemble).unwrap();
        let eigs = hermitian_eigenvalues(rho.matrix());
        let nonzero: Vec<f64> = eigs.iter().copied().filter(|e| *e > 1e-12).collect();
        assert_eq!(nonzero.len(), 2);
        for e in nonzero {
            assert_abs_diff_eq!(e, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_probability_ensemble_rejected() {
        let ensemble = BranchEnsemble {
            success_prob: 0.0,
            branches: vec![],
        };
        assert!(matches!(
            density_from_ensemble(&ensemble),
            Err(FockError::DegenerateState(_))
        ));
    }

    #[test]
    fn materialized_mixture_trace_and_rank() {
        let lam = SqueezeParam::new(0.2).unwrap();
        let input = split_smsv(&lam, &SplitterParam::balanced(), 10).unwrap();
        let params =
            SubtractionParams::from_tap_reflectance(0.1, 1.0, 10, c(0.0), c(0.0)).unwrap();
        let ensemble = mixed_output_single(&input, &params).unwrap();
        let rho = density_from_ensemble(&ensemble).unwrap();
        assert_abs_diff_eq!(rho.trace(), 1.0, epsilon = 1e-10);
        let rank = hermitian_eigenvalues(rho.matrix())
            .iter()
            .filter(|e| **e > 1e-12)
            .count();
        assert!(rank <= params.k_max(), "rank {rank}");
    }

    #[test]
    fn partial_transpose_involutive() {
        let lam = SqueezeParam::new(0.3).unwrap();
        let input = split_smsv(&lam, &SplitterParam::balanced(), 4).unwrap();
        let rho = DensityTwoMode::from_pure(&input).unwrap();
        let once = partial_transpose(&rho);
        let twice = partial_transpose(&DensityTwoMode {
            rho: once,
            side: rho.side(),
        });
        let gap: f64 = twice
            .iter()
            .zip(rho.matrix().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(gap < 1e-15);
    }

    #[test]
    fn partial_transpose_of_product_state_stays_positive() {
        let a = crate::fock::FockVector::from_amplitudes(vec![c(0.8), c(0.6)]).unwrap();
        let b = crate::fock::FockVector::from_amplitudes(vec![c(0.6), Complex64::new(0.0, 0.8)])
            .unwrap();
        let product = PureTwoMode::product(&a, &b).unwrap();
        let rho = DensityTwoMode::from_pure(&product).unwrap();
        let eigs = hermitian_eigenvalues(&partial_transpose(&rho));
        assert!(eigs[0] > -1e-12, "min eigenvalue {}", eigs[0]);
    }

    #[test]
    fn partial_transpose_bell_minimum_eigenvalue() {
        // (|0,0⟩ + |1,1⟩)/√2 projector: min eigenvalue of the partial
        // transpose is −1/2.
        let mut m = DMatrix::zeros(2, 2);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        m[(0, 0)] = c(s);
        m[(1, 1)] = c(s);
        let rho = DensityTwoMode::from_pure(&PureTwoMode::from_coeffs(m).unwrap()).unwrap();
        let eigs = hermitian_eigenvalues(&partial_transpose(&rho));
        assert_abs_diff_eq!(eigs[0], -0.5, epsilon = 1e-12);
    }

    #[test]
    fn log_negativity_of_product_state_vanishes() {
        let a = crate::fock::FockVector::from_amplitudes(vec![c(0.6), c(0.8), c(0.0)]).unwrap();
        let b = crate::fock::FockVector::from_amplitudes(vec![c(1.0), c(0.0), c(0.0)]).unwrap();
        let rho = DensityTwoMode::from_pure(&PureTwoMode::product(&a, &b).unwrap()).unwrap();
        let e = log_negativity(&rho).unwrap();
        assert_abs_diff_eq!(e.value, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn log_negativity_of_bell_like_state() {
        let rho = DensityTwoMode::from_pure(&bell_like(1)).unwrap();
        let e = log_negativity(&rho).unwrap();
        assert_abs_diff_eq!(e.value, 1.0, epsilon = 1e-12);
        assert_eq!(e.kind, EntanglementKind::LogNegativity);
    }

    #[test]
    fn pure_state_negativity_matches_schmidt_formula() {
        let lam = SqueezeParam::new(0.25).unwrap();
        let spl = SplitterParam::from_reflectance(0.35).unwrap();
        let state = split_smsv(&lam, &spl, 6).unwrap();
        let rho = DensityTwoMode::from_pure(&state).unwrap();
        let e = log_negativity(&rho).unwrap();
        let sigma_sum: f64 = schmidt_coefficients(&state).unwrap().iter().sum();
        assert_abs_diff_eq!(e.value, (sigma_sum * sigma_sum).log2(), epsilon = 1e-8);
        assert!(entropy_of_entanglement(&state).unwrap().value >= 0.0);
    }
}
