//! Photon subtraction in two flavours: the idealized displaced-annihilation
//! filters (â+α) ⊗ 𝕀 and (â+α) ⊗ (b̂+β), and the realistic model with a
//! tap-off beam splitter of amplitude reflectance r_S feeding an on/off
//! detector of efficiency η.
//!
//! In the realistic model the heralded output is a mixture over the number
//! of subtracted photons. Branch states are stored unnormalized and in the
//! displaced frame: the common inverse displacement D(−t_S·α) is a local
//! unitary shared by all branches, so it does not affect any entanglement
//! measure and is left to the caller (see [`crate::fock::apply_local`]).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::fock::{apply_local, ModeOp, PureTwoMode};
use crate::math::{ln_factorial_table, sqrt_binomial};

/// Parameters of the realistic subtraction chain. Both tap-off splitters
/// share (t_S, r_S) and both detectors share η; asymmetric setups can be
/// modeled by calling the branch constructors directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubtractionParams {
    t_s: f64,
    r_s: f64,
    eta: f64,
    k_max: usize,
    alpha: Complex64,
    beta: Complex64,
}

impl SubtractionParams {
    pub fn new(
        t_s: f64,
        r_s: f64,
        eta: f64,
        k_max: usize,
        alpha: Complex64,
        beta: Complex64,
    ) -> Result<Self> {
        check_tap_pair(t_s, r_s)?;
        if !eta.is_finite() || !(0.0..=1.0).contains(&eta) {
            return Err(FockError::InvalidParameter(format!(
                "detector efficiency must lie in [0, 1], got {eta}"
            )));
        }
        if k_max < 1 {
            return Err(FockError::InvalidParameter(
                "k_max must be at least 1".into(),
            ));
        }
        Ok(Self {
            t_s,
            r_s,
            eta,
            k_max,
            alpha,
            beta,
        })
    }

    /// From tap-off intensity reflectance R_S = r_S².
    pub fn from_tap_reflectance(
        big_r_s: f64,
        eta: f64,
        k_max: usize,
        alpha: Complex64,
        beta: Complex64,
    ) -> Result<Self> {
        if !big_r_s.is_finite() || !(0.0..=1.0).contains(&big_r_s) {
            return Err(FockError::InvalidParameter(format!(
                "tap-off reflectance must lie in [0, 1], got {big_r_s}"
            )));
        }
        Self::new(
            (1.0 - big_r_s).sqrt(),
            big_r_s.sqrt(),
            eta,
            k_max,
            alpha,
            beta,
        )
    }

    pub fn t_s(&self) -> f64 {
        self.t_s
    }

    pub fn r_s(&self) -> f64 {
        self.r_s
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

fn check_tap_pair(t_s: f64, r_s: f64) -> Result<()> {
    if !(t_s.is_finite() && r_s.is_finite()) || t_s < 0.0 || r_s < 0.0 {
        return Err(FockError::InvalidParameter(format!(
            "tap-off amplitudes must be finite and nonnegative, got t_S={t_s}, r_S={r_s}"
        )));
    }
    if ((t_s * t_s + r_s * r_s) - 1.0).abs() > crate::fock::SPLITTER_TOL {
        return Err(FockError::InvalidParameter(format!(
            "tap-off amplitudes must satisfy t_S^2 + r_S^2 = 1, got {}",
            t_s * t_s + r_s * r_s
        )));
    }
    Ok(())
}

/// Which heralding event a branch belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchLabel {
    /// k photons subtracted from mode A.
    Single { k: usize },
    /// k photons from mode A, l photons from mode B.
    Double { k: usize, l: usize },
}

/// One unnormalized heralded branch; its squared norm is the probability of
/// subtracting exactly that many photons, and the herald weight is the
/// probability that the on/off detector(s) actually click on them.
#[derive(Debug, Clone)]
pub struct Branch {
    pub label: BranchLabel,
    pub state: PureTwoMode,
    pub herald_weight: f64,
}

impl Branch {
    /// herald_weight · ⟨ψ|ψ⟩, this branch's contribution to the success
    /// probability.
    pub fn weighted_prob(&self) -> f64 {
        self.herald_weight * self.state.norm2()
    }
}

/// Heralded mixture: the list of branches and the total success probability.
#[derive(Debug, Clone)]
pub struct BranchEnsemble {
    pub branches: Vec<Branch>,
    pub success_prob: f64,
}

impl BranchEnsemble {
    pub fn n_max(&self) -> Option<usize> {
        self.branches.first().map(|b| b.state.n_max())
    }
}

/// Detector click probability on k incident photons, 1 − (1−η)^k.
pub fn herald_weight(eta: f64, k: usize) -> f64 {
    1.0 - (1.0 - eta).powi(k as i32)
}

/// Ideal single-mode filter (â+α) ⊗ 𝕀 (unnormalized image).
pub fn filter_single_ideal(state: &PureTwoMode, alpha: Complex64) -> Result<PureTwoMode> {
    let op = ModeOp::displaced_annihilation(alpha, state.n_max())?;
    apply_local(state, Some(&op), None)
}

/// Ideal two-mode filter (â+α) ⊗ (b̂+β) (unnormalized image).
pub fn filter_double_ideal(
    state: &PureTwoMode,
    alpha: Complex64,
    beta: Complex64,
) -> Result<PureTwoMode> {
    let op_a = ModeOp::displaced_annihilation(alpha, state.n_max())?;
    let op_b = ModeOp::displaced_annihilation(beta, state.n_max())?;
    apply_local(state, Some(&op_a), Some(&op_b))
}

/// D(α) · C with the displacement rows extended to `rows` so no subtraction
/// branch is silently clipped.
fn displaced_rows(input: &PureTwoMode, alpha: Complex64, rows: usize) -> Result<DMatrix<Complex64>> {
    let d = ModeOp::displacement(alpha, rows, input.dim())?;
    Ok(d.matrix() * input.coeffs())
}

/// B^(k)_{mn} = √C(m+k,k) t_Sᵐ r_Sᵏ (D(α)·C)_{m+k,n} from precomputed rows.
fn branch_single_from_rows(
    displaced: &DMatrix<Complex64>,
    k: usize,
    t_s: f64,
    r_s: f64,
    lf: &[f64],
) -> PureTwoMode {
    let side = displaced.ncols();
    let mut coeffs = DMatrix::zeros(side, side);
    let rk = r_s.powi(k as i32);
    for m in 0..side {
        let weight = sqrt_binomial(lf, m + k, k) * t_s.powi(m as i32) * rk;
        for n in 0..side {
            coeffs[(m, n)] = displaced[(m + k, n)] * weight;
        }
    }
    PureTwoMode::from_coeffs(coeffs).expect("square by construction")
}

fn branch_single_raw(
    input: &PureTwoMode,
    alpha: Complex64,
    k: usize,
    t_s: f64,
    r_s: f64,
) -> Result<PureTwoMode> {
    check_tap_pair(t_s, r_s)?;
    let displaced = displaced_rows(input, alpha, input.dim() + k)?;
    let lf = ln_factorial_table(input.n_max() + k);
    Ok(branch_single_from_rows(&displaced, k, t_s, r_s, &lf))
}

/// Branch after displacing mode A by α and subtracting exactly k ≥ 1 photons
/// on the tap-off splitter. The result stays in the displaced frame.
pub fn subtract_branch_single(
    input: &PureTwoMode,
    alpha: Complex64,
    k: usize,
    t_s: f64,
    r_s: f64,
) -> Result<PureTwoMode> {
    if k < 1 {
        return Err(FockError::InvalidParameter(
            "subtraction order k must be at least 1".into(),
        ));
    }
    branch_single_raw(input, alpha, k, t_s, r_s)
}

/// The k = 0 (no-click) component of the same decomposition; together with
/// the k ≥ 1 branches it completes the tap-off probability to one.
pub fn no_subtraction_branch_single(
    input: &PureTwoMode,
    alpha: Complex64,
    t_s: f64,
    r_s: f64,
) -> Result<PureTwoMode> {
    branch_single_raw(input, alpha, 0, t_s, r_s)
}

/// Heralded mixture for single-mode subtraction with an on/off detector:
/// branches k = 1..k_max with weights 1−(1−η)^k and success probability
/// P₁(η) = Σ_k [1−(1−η)^k] ⟨ψ^(k)|ψ^(k)⟩.
pub fn mixed_output_single(input: &PureTwoMode, params: &SubtractionParams) -> Result<BranchEnsemble> {
    let displaced = displaced_rows(input, params.alpha, input.dim() + params.k_max)?;
    let lf = ln_factorial_table(input.n_max() + params.k_max);
    let mut branches = Vec::with_capacity(params.k_max);
    let mut success_prob = 0.0;
    for k in 1..=params.k_max {
        let state = branch_single_from_rows(&displaced, k, params.t_s, params.r_s, &lf);
        let branch = Branch {
            label: BranchLabel::Single { k },
            herald_weight: herald_weight(params.eta, k),
            state,
        };
        success_prob += branch.weighted_prob();
        branches.push(branch);
    }
    Ok(BranchEnsemble {
        branches,
        success_prob,
    })
}

/// B^(k,l)_{mn} = √(C(m+k,k) C(n+l,l)) t_S^{m+n} r_S^{k+l}
///                (D(α)·C·D(β)ᵀ)_{m+k,n+l} from the precomputed product.
fn branch_double_from_product(
    product: &DMatrix<Complex64>,
    side: usize,
    k: usize,
    l: usize,
    t_s: f64,
    r_s: f64,
    lf: &[f64],
) -> PureTwoMode {
    let mut coeffs = DMatrix::zeros(side, side);
    let rkl = r_s.powi((k + l) as i32);
    for m in 0..side {
        let wa = sqrt_binomial(lf, m + k, k);
        for n in 0..side {
            let weight = wa * sqrt_binomial(lf, n + l, l) * t_s.powi((m + n) as i32) * rkl;
            coeffs[(m, n)] = product[(m + k, n + l)] * weight;
        }
    }
    PureTwoMode::from_coeffs(coeffs).expect("square by construction")
}

fn displaced_product_double(
    input: &PureTwoMode,
    alpha: Complex64,
    beta: Complex64,
    extra: usize,
) -> Result<DMatrix<Complex64>> {
    let rows = input.dim() + extra;
    let d_a = ModeOp::displacement(alpha, rows, input.dim())?;
    let d_b = ModeOp::displacement(beta, rows, input.dim())?;
    Ok(d_a.matrix() * input.coeffs() * d_b.matrix().transpose())
}

/// Branch after displacing both modes and subtracting exactly k photons from
/// mode A and l from mode B (both ≥ 1), in the displaced frame.
pub fn subtract_branch_double(
    input: &PureTwoMode,
    alpha: Complex64,
    beta: Complex64,
    k: usize,
    l: usize,
    t_s: f64,
    r_s: f64,
) -> Result<PureTwoMode> {
    if k < 1 || l < 1 {
        return Err(FockError::InvalidParameter(
            "subtraction orders k, l must be at least 1".into(),
        ));
    }
    check_tap_pair(t_s, r_s)?;
    let product = displaced_product_double(input, alpha, beta, k.max(l))?;
    let lf = ln_factorial_table(input.n_max() + k.max(l));
    Ok(branch_double_from_product(
        &product,
        input.dim(),
        k,
        l,
        t_s,
        r_s,
        &lf,
    ))
}

/// Heralded mixture for subtraction on both modes: branches over
/// (k, l) ∈ [1, k_max]² with weights [1−(1−η)^k][1−(1−η)^l].
pub fn mixed_output_double(input: &PureTwoMode, params: &SubtractionParams) -> Result<BranchEnsemble> {
    let product = displaced_product_double(input, params.alpha, params.beta, params.k_max)?;
    let lf = ln_factorial_table(input.n_max() + params.k_max);
    let mut branches = Vec::with_capacity(params.k_max * params.k_max);
    let mut success_prob = 0.0;
    for k in 1..=params.k_max {
        let wk = herald_weight(params.eta, k);
        for l in 1..=params.k_max {
            let state = branch_double_from_product(
                &product,
                input.dim(),
                k,
                l,
                params.t_s,
                params.r_s,
                &lf,
            );
            let branch = Branch {
                label: BranchLabel::Double { k, l },
                herald_weight: wk * herald_weight(params.eta, l),
                state,
            };
            success_prob += branch.weighted_prob();
            branches.push(branch);
        }
    }
    Ok(BranchEnsemble {
        branches,
        success_prob,
    })
}

/// Closed-form filter for displacement-enhanced subtraction of exactly k
/// photons, in the un-displaced frame (the inverse displacement D(−t_S·α)
/// already folded in):
///
/// F̂₁^(k) = (r_Sᵏ/√k!) e^{−(r_S²/2)|α|²} t_S^n̂ e^{−r_S² α* â} (â+α)ᵏ.
///
/// The exponential of the annihilation operator is nilpotent on the
/// truncated space, so its series terminates at order n_max.
pub fn filter_operator(
    k: usize,
    alpha: Complex64,
    t_s: f64,
    r_s: f64,
    n_max: usize,
) -> Result<ModeOp> {
    check_tap_pair(t_s, r_s)?;
    let a = ModeOp::annihilation(n_max)?;
    let side = n_max + 1;

    let mut displaced_power = DMatrix::identity(side, side);
    let displaced = ModeOp::displaced_annihilation(alpha, n_max)?;
    for _ in 0..k {
        displaced_power = displaced.matrix() * displaced_power;
    }

    let mut exp_term = DMatrix::identity(side, side);
    let mut a_power = DMatrix::identity(side, side);
    let mut coeff = Complex64::new(1.0, 0.0);
    let arg = -r_s * r_s * alpha.conj();
    for j in 1..=n_max {
        a_power = a.matrix() * a_power;
        coeff *= arg / (j as f64);
        exp_term += &a_power * coeff;
    }

    let attenuation = ModeOp::number_attenuation(t_s, side);
    let lf = ln_factorial_table(k.max(1));
    let scale = r_s.powi(k as i32) * (-0.5 * lf[k]).exp()
        * (-0.5 * r_s * r_s * alpha.norm_sqr()).exp();
    let matrix = attenuation.matrix() * exp_term * displaced_power * Complex64::from(scale);
    Ok(ModeOp::from_matrix(matrix))
}
