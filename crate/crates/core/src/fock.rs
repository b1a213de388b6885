//! Truncated Fock-space primitives: single- and two-mode pure states,
//! elementary mode operators, the two-mode beam splitter, and truncation
//! diagnostics.
//!
//! Everything lives on the space spanned by |0⟩..|n_max⟩ per mode. States are
//! kept unnormalized wherever the squared norm carries meaning (it is the
//! event probability of a heralded branch); a "normalized" flag is never
//! stored, the norm is always computed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::math::ln_factorial_table;

/// Tolerance on t² + r² = 1 for beam-splitter amplitude pairs.
pub const SPLITTER_TOL: f64 = 1e-12;

/// Default relative tail tolerance: truncation tails above this fraction of
/// the total squared norm are reported as not ok (a warning, never an abort).
pub const TAIL_TOL: f64 = 1e-6;

/// Squared-amplitude weight sitting on the truncation boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    /// Total squared amplitude on the highest retained Fock row/column.
    pub tail_weight: f64,
    /// Whether the tail is below the configured fraction of the total norm.
    pub ok: bool,
}

impl TruncationReport {
    fn from_tail(tail_weight: f64, norm2: f64, rel_tol: f64) -> Self {
        Self {
            tail_weight,
            ok: tail_weight <= rel_tol * norm2,
        }
    }
}

/// Single-mode pure state: complex amplitudes over |0⟩..|n_max⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: DVector<Complex64>,
}

impl FockVector {
    /// State with all amplitudes zero.
    pub fn zero(n_max: usize) -> Self {
        Self {
            amps: DVector::zeros(n_max + 1),
        }
    }

    /// Number state |n⟩.
    pub fn basis(n_max: usize, n: usize) -> Result<Self> {
        if n > n_max {
            return Err(FockError::InvalidDimension(format!(
                "basis index {n} exceeds n_max {n_max}"
            )));
        }
        let mut v = Self::zero(n_max);
        v.amps[n] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    /// Vacuum state |0⟩.
    pub fn vacuum(n_max: usize) -> Self {
        Self::basis(n_max, 0).expect("vacuum always fits")
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(FockError::InvalidDimension(
                "need at least the vacuum amplitude".into(),
            ));
        }
        Ok(Self {
            amps: DVector::from_vec(amps),
        })
    }

    pub fn n_max(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, n: usize) -> Complex64 {
        self.amps[n]
    }

    pub fn amps(&self) -> &DVector<Complex64> {
        &self.amps
    }

    /// Squared norm ⟨ψ|ψ⟩.
    pub fn norm2(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n2 = self.norm2();
        if n2 <= 0.0 {
            return Err(FockError::DegenerateState(
                "cannot normalize the zero vector".into(),
            ));
        }
        Ok(Self {
            amps: &self.amps / Complex64::from(n2.sqrt()),
        })
    }

    /// Weight on the highest retained Fock number, relative to `rel_tol`.
    pub fn truncation_report(&self, rel_tol: f64) -> TruncationReport {
        let tail = self.amps[self.n_max()].norm_sqr();
        TruncationReport::from_tail(tail, self.norm2(), rel_tol)
    }
}

/// Two-mode pure (possibly unnormalized) state with coefficient matrix
/// C[m][n] on |m⟩_A ⊗ |n⟩_B; the matrix is always square of side n_max + 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PureTwoMode {
    coeffs: DMatrix<Complex64>,
}

impl PureTwoMode {
    pub fn zero(n_max: usize) -> Self {
        Self {
            coeffs: DMatrix::zeros(n_max + 1, n_max + 1),
        }
    }

    /// Basis state |m, n⟩.
    pub fn basis(n_max: usize, m: usize, n: usize) -> Result<Self> {
        if m > n_max || n > n_max {
            return Err(FockError::InvalidDimension(format!(
                "basis ({m},{n}) exceeds n_max {n_max}"
            )));
        }
        let mut s = Self::zero(n_max);
        s.coeffs[(m, n)] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn from_coeffs(coeffs: DMatrix<Complex64>) -> Result<Self> {
        if coeffs.nrows() != coeffs.ncols() || coeffs.nrows() == 0 {
            return Err(FockError::InvalidDimension(format!(
                "coefficient matrix must be square and nonempty, got {}x{}",
                coeffs.nrows(),
                coeffs.ncols()
            )));
        }
        Ok(Self { coeffs })
    }

    /// Product state |a⟩ ⊗ |b⟩ (both factors on the same truncated space).
    pub fn product(a: &FockVector, b: &FockVector) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(FockError::DimensionMismatch(format!(
                "product factors differ: {} vs {}",
                a.dim(),
                b.dim()
            )));
        }
        let side = a.dim();
        let coeffs = DMatrix::from_fn(side, side, |m, n| a.amp(m) * b.amp(n));
        Ok(Self { coeffs })
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.nrows() - 1
    }

    /// Side length of the coefficient matrix, n_max + 1.
    pub fn dim(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn coeff(&self, m: usize, n: usize) -> Complex64 {
        self.coeffs[(m, n)]
    }

    pub fn coeffs(&self) -> &DMatrix<Complex64> {
        &self.coeffs
    }

    /// Squared Frobenius norm; equals the event probability when the state is
    /// a heralded branch.
    pub fn norm2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n2 = self.norm2();
        if n2 <= 0.0 {
            return Err(FockError::DegenerateState(
                "cannot normalize the zero state".into(),
            ));
        }
        Ok(Self {
            coeffs: &self.coeffs / Complex64::from(n2.sqrt()),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: &self.coeffs * factor,
        }
    }

    /// Inner product ⟨self|other⟩.
    pub fn overlap(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(FockError::DimensionMismatch(format!(
                "overlap of side {} with side {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Embed into a larger truncated space (zero padding above n_max).
    pub fn pad_to(&self, n_max: usize) -> Result<Self> {
        if n_max < self.n_max() {
            return Err(FockError::InvalidDimension(format!(
                "cannot pad side {} down to n_max {}",
                self.dim(),
                n_max
            )));
        }
        let mut coeffs = DMatrix::zeros(n_max + 1, n_max + 1);
        coeffs
            .view_mut((0, 0), (self.dim(), self.dim()))
            .copy_from(&self.coeffs);
        Ok(Self { coeffs })
    }

    /// Squared weight on the highest row and column (counted once).
    pub fn truncation_report(&self, rel_tol: f64) -> TruncationReport {
        let top = self.n_max();
        let mut tail = 0.0;
        for n in 0..=top {
            tail += self.coeffs[(top, n)].norm_sqr();
        }
        for m in 0..top {
            tail += self.coeffs[(m, top)].norm_sqr();
        }
        TruncationReport::from_tail(tail, self.norm2(), rel_tol)
    }
}

/// Single-mode operator on the truncated space; rectangular shapes are
/// allowed so displacements can extend the row dimension without clipping.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOp {
    matrix: DMatrix<Complex64>,
}

impl ModeOp {
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Self {
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    /// Annihilation operator, ⟨n−1|â|n⟩ = √n on the (n_max+1)² space.
    pub fn annihilation(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(FockError::InvalidDimension(
                "annihilation needs n_max >= 1".into(),
            ));
        }
        let side = n_max + 1;
        let mut m = DMatrix::zeros(side, side);
        for n in 1..side {
            m[(n - 1, n)] = Complex64::from((n as f64).sqrt());
        }
        Ok(Self { matrix: m })
    }

    /// Matrix elements D[m][n] = ⟨m|D̂(α)|n⟩ on a d_out × d_in block,
    ///
    /// D_{m,n}(α) = e^{−|α|²/2} Σ_{k=max(0,m−n)}^{m}
    ///              √(m! n!) α^k (−α*)^{n−m+k} / (k! (m−k)! (n−m+k)!).
    ///
    /// Factorial ratios are evaluated in log magnitude; phases and signs are
    /// tracked separately.
    pub fn displacement(alpha: Complex64, d_out: usize, d_in: usize) -> Result<Self> {
        if d_out == 0 || d_in == 0 {
            return Err(FockError::InvalidDimension(
                "displacement block needs d_out, d_in >= 1".into(),
            ));
        }
        let mut mat = DMatrix::zeros(d_out, d_in);
        let abs = alpha.norm();
        if abs == 0.0 {
            for i in 0..d_out.min(d_in) {
                mat[(i, i)] = Complex64::new(1.0, 0.0);
            }
            return Ok(Self { matrix: mat });
        }
        let lf = ln_factorial_table(d_out.max(d_in) - 1);
        let ln_abs = abs.ln();
        let theta = alpha.arg();
        let gauss = (-0.5 * alpha.norm_sqr()).exp();
        for m in 0..d_out {
            for n in 0..d_in {
                let k_lo = m.saturating_sub(n);
                let mut acc = Complex64::new(0.0, 0.0);
                for k in k_lo..=m {
                    let j = n + k - m; // exponent of (−α*), nonnegative by k ≥ k_lo
                    let ln_mag = 0.5 * (lf[m] + lf[n]) - lf[k] - lf[m - k] - lf[j]
                        + ((k + j) as f64) * ln_abs;
                    let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
                    acc += Complex64::from_polar(ln_mag.exp(), (k as f64 - j as f64) * theta)
                        * sign;
                }
                mat[(m, n)] = acc * gauss;
            }
        }
        Ok(Self { matrix: mat })
    }

    /// Displaced annihilation â + α·𝕀.
    pub fn displaced_annihilation(alpha: Complex64, n_max: usize) -> Result<Self> {
        let mut op = Self::annihilation(n_max)?;
        for i in 0..op.matrix.nrows() {
            op.matrix[(i, i)] += alpha;
        }
        Ok(op)
    }

    /// Attenuation t^n̂ (diagonal).
    pub fn number_attenuation(t: f64, dim: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::from(t.powi(i as i32));
        }
        Self { matrix: m }
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dagger(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    /// self ∘ other (matrix product; apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(FockError::DimensionMismatch(format!(
                "compose {}x{} with {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(Self {
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn apply(&self, state: &FockVector) -> Result<FockVector> {
        if self.cols() != state.dim() {
            return Err(FockError::DimensionMismatch(format!(
                "operator expects dim {}, state has {}",
                self.cols(),
                state.dim()
            )));
        }
        Ok(FockVector {
            amps: &self.matrix * state.amps(),
        })
    }
}

fn check_splitter_pair(t: f64, r: f64) -> Result<()> {
    if !(t.is_finite() && r.is_finite()) || t < 0.0 || r < 0.0 {
        return Err(FockError::InvalidParameter(format!(
            "beam splitter amplitudes must be finite and nonnegative, got t={t}, r={r}"
        )));
    }
    if ((t * t + r * r) - 1.0).abs() > SPLITTER_TOL {
        return Err(FockError::InvalidParameter(format!(
            "non-unitary beam splitter pair: t^2 + r^2 = {}",
            t * t + r * r
        )));
    }
    Ok(())
}

/// ⟨m', n'｜U_BS｜m, n⟩ within a fixed total-photon block (m+n = m'+n').
///
/// Convention: â† → t â† + r b̂†, b̂† → t b̂† − r â†.
fn beamsplitter_element(lf: &[f64], t: f64, r: f64, mp: usize, np: usize, m: usize, n: usize) -> f64 {
    let i_lo = mp.saturating_sub(n);
    let i_hi = mp.min(m);
    let mut sum = 0.0;
    for i in i_lo..=i_hi {
        let j = mp - i;
        let ln_mag = 0.5 * (lf[mp] + lf[np] - lf[m] - lf[n])
            + (lf[m] - lf[i] - lf[m - i])
            + (lf[n] - lf[j] - lf[n - j]);
        let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
        sum += sign
            * ln_mag.exp()
            * t.powi((i + n - j) as i32)
            * r.powi((m - i + j) as i32);
    }
    sum
}

/// Unitary beam-splitter image of a two-mode state.
///
/// Total photon number is conserved, so the state is transformed block by
/// block; amplitude carried into blocks beyond the truncation is dropped
/// (the leakage shows up in the truncation report). States supported
/// strictly below n_max transform exactly.
pub fn beamsplitter_apply(state: &PureTwoMode, t: f64, r: f64) -> Result<PureTwoMode> {
    check_splitter_pair(t, r)?;
    let n_max = state.n_max();
    let lf = ln_factorial_table(2 * n_max);
    let mut out = DMatrix::zeros(n_max + 1, n_max + 1);
    for total in 0..=2 * n_max {
        let lo = total.saturating_sub(n_max);
        let hi = total.min(n_max);
        let block: Vec<(usize, Complex64)> = (lo..=hi)
            .map(|m| (m, state.coeff(m, total - m)))
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .collect();
        if block.is_empty() {
            continue;
        }
        for mp in lo..=hi {
            let np = total - mp;
            let mut acc = Complex64::new(0.0, 0.0);
            for &(m, amp) in &block {
                acc += amp * beamsplitter_element(&lf, t, r, mp, np, m, total - m);
            }
            out[(mp, np)] = acc;
        }
    }
    Ok(PureTwoMode { coeffs: out })
}

/// Local action C ← A · C · Bᵀ with the identity substituted for an absent
/// operator. Rectangular operators extend the output space; the result is
/// zero-padded back to a square matrix on max(rows_A, rows_B).
pub fn apply_local(
    state: &PureTwoMode,
    op_a: Option<&ModeOp>,
    op_b: Option<&ModeOp>,
) -> Result<PureTwoMode> {
    let side = state.dim();
    for (label, op) in [("A", op_a), ("B", op_b)] {
        if let Some(op) = op {
            if op.cols() != side {
                return Err(FockError::DimensionMismatch(format!(
                    "operator on mode {label} expects dim {}, state has {side}",
                    op.cols()
                )));
            }
        }
    }
    let rows_a = op_a.map_or(side, ModeOp::rows);
    let rows_b = op_b.map_or(side, ModeOp::rows);
    let out_side = rows_a.max(rows_b);

    let left = match op_a {
        Some(op) => op.matrix().clone() * state.coeffs(),
        None => state.coeffs().clone(),
    };
    let product = match op_b {
        Some(op) => left * op.matrix().transpose(),
        None => left,
    };
    let mut coeffs = DMatrix::zeros(out_side, out_side);
    coeffs
        .view_mut((0, 0), (product.nrows(), product.ncols()))
        .copy_from(&product);
    Ok(PureTwoMode { coeffs })
}
