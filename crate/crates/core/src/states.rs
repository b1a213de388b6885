//! Constructors for the specific states of the protocol: single-mode
//! squeezed vacuum, its closed-form beam-splitter image, the weak-squeezing
//! truncated expansion, and the two-photon (qutrit) target state.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::fock::{FockVector, PureTwoMode, SPLITTER_TOL};
use crate::math::ln_factorial_table;

/// Squeezing parameter λ = tanh s, the Fock-amplitude ratio of the squeezed
/// vacuum. The API is parameterized by λ throughout; the squeezing constant
/// s is derived when needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParam {
    lambda: f64,
}

impl SqueezeParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || !(0.0..1.0).contains(&lambda) {
            return Err(FockError::InvalidParameter(format!(
                "squeezing parameter must satisfy 0 <= lambda < 1, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Squeezing constant s = atanh(λ).
    pub fn squeezing_constant(&self) -> f64 {
        self.lambda.atanh()
    }
}

/// Beam-splitter amplitudes (t, r), both nonnegative with t² + r² = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitterParam {
    t: f64,
    r: f64,
}

impl SplitterParam {
    pub fn new(t: f64, r: f64) -> Result<Self> {
        if !(t.is_finite() && r.is_finite()) || t < 0.0 || r < 0.0 {
            return Err(FockError::InvalidParameter(format!(
                "splitter amplitudes must be finite and nonnegative, got t={t}, r={r}"
            )));
        }
        if ((t * t + r * r) - 1.0).abs() > SPLITTER_TOL {
            return Err(FockError::InvalidParameter(format!(
                "splitter amplitudes must satisfy t^2 + r^2 = 1, got {}",
                t * t + r * r
            )));
        }
        Ok(Self { t, r })
    }

    /// From intensity reflectance R = r².
    pub fn from_reflectance(big_r: f64) -> Result<Self> {
        if !big_r.is_finite() || !(0.0..=1.0).contains(&big_r) {
            return Err(FockError::InvalidParameter(format!(
                "intensity reflectance must lie in [0, 1], got {big_r}"
            )));
        }
        Ok(Self {
            t: (1.0 - big_r).sqrt(),
            r: big_r.sqrt(),
        })
    }

    pub fn balanced() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self { t: s, r: s }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Intensity reflectance R = r².
    pub fn reflectance(&self) -> f64 {
        self.r * self.r
    }
}

/// Single-mode squeezed vacuum,
/// c_{2n} = (1−λ²)^{1/4} √((2n)!)/(2ⁿ n!) λⁿ, odd amplitudes exactly zero.
pub fn smsv(lambda: &SqueezeParam, n_max: usize) -> Result<FockVector> {
    if n_max < 2 {
        return Err(FockError::InvalidDimension(
            "squeezed vacuum needs n_max >= 2".into(),
        ));
    }
    let lam = lambda.lambda();
    let q = (1.0 - lam * lam).powf(0.25);
    let mut amps = vec![Complex64::new(0.0, 0.0); n_max + 1];
    amps[0] = Complex64::from(q);
    if lam > 0.0 {
        let lf = ln_factorial_table(n_max);
        let ln_lam = lam.ln();
        let ln2 = std::f64::consts::LN_2;
        for n in 1..=n_max / 2 {
            let ln_mag = 0.5 * lf[2 * n] - lf[n] + (n as f64) * (ln_lam - ln2);
            amps[2 * n] = Complex64::from(q * ln_mag.exp());
        }
    }
    FockVector::from_amplitudes(amps)
}

/// Split squeezed vacuum in closed form,
/// C_{mn} = (1−λ²)^{1/4} (λ/2)^{(m+n)/2} (m+n)!/((m+n)/2)! tᵐ rⁿ / √(m! n!)
/// for m+n even, zero otherwise.
pub fn split_smsv(
    lambda: &SqueezeParam,
    splitter: &SplitterParam,
    n_max: usize,
) -> Result<PureTwoMode> {
    if n_max < 2 {
        return Err(FockError::InvalidDimension(
            "split squeezed vacuum needs n_max >= 2".into(),
        ));
    }
    let lam = lambda.lambda();
    let (t, r) = (splitter.t(), splitter.r());
    let q = (1.0 - lam * lam).powf(0.25);
    let side = n_max + 1;
    let lf = ln_factorial_table(2 * n_max);
    let ln2 = std::f64::consts::LN_2;
    let mut coeffs = DMatrix::zeros(side, side);
    coeffs[(0, 0)] = Complex64::from(q);
    if lam > 0.0 {
        let ln_lam = lam.ln();
        for m in 0..side {
            for n in 0..side {
                let total = m + n;
                if total == 0 || total % 2 == 1 {
                    continue;
                }
                let half = total / 2;
                let ln_mag = (half as f64) * (ln_lam - ln2) + lf[total]
                    - lf[half]
                    - 0.5 * (lf[m] + lf[n]);
                coeffs[(m, n)] = Complex64::from(
                    q * ln_mag.exp() * t.powi(m as i32) * r.powi(n as i32),
                );
            }
        }
    }
    PureTwoMode::from_coeffs(coeffs)
}

/// Weak-squeezing truncated expansion, kept unnormalized exactly as the
/// four-term form |0,0⟩ + λrt|1,1⟩ + (λ/√2)(t²|2,0⟩ + r²|0,2⟩).
pub fn weak_input(
    lambda: &SqueezeParam,
    splitter: &SplitterParam,
    n_max: usize,
) -> Result<PureTwoMode> {
    if n_max < 2 {
        return Err(FockError::InvalidDimension(
            "weak-squeezing expansion needs n_max >= 2".into(),
        ));
    }
    let lam = lambda.lambda();
    let (t, r) = (splitter.t(), splitter.r());
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut coeffs = DMatrix::zeros(n_max + 1, n_max + 1);
    coeffs[(0, 0)] = Complex64::new(1.0, 0.0);
    coeffs[(1, 1)] = Complex64::from(lam * r * t);
    coeffs[(2, 0)] = Complex64::from(lam * t * t * inv_sqrt2);
    coeffs[(0, 2)] = Complex64::from(lam * r * r * inv_sqrt2);
    PureTwoMode::from_coeffs(coeffs)
}

/// Two-photon target state √2·rt|1,1⟩ + t²|2,0⟩ + r²|0,2⟩; already
/// normalized since 2r²t² + t⁴ + r⁴ = (r² + t²)² = 1.
pub fn qutrit_state(splitter: &SplitterParam, n_max: usize) -> Result<PureTwoMode> {
    if n_max < 2 {
        return Err(FockError::InvalidDimension(
            "two-photon state needs n_max >= 2".into(),
        ));
    }
    let (t, r) = (splitter.t(), splitter.r());
    let mut coeffs = DMatrix::zeros(n_max + 1, n_max + 1);
    coeffs[(1, 1)] = Complex64::from(std::f64::consts::SQRT_2 * r * t);
    coeffs[(2, 0)] = Complex64::from(t * t);
    coeffs[(0, 2)] = Complex64::from(r * r);
    PureTwoMode::from_coeffs(coeffs)
}
