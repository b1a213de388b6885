//! Test-support oracles, independent of the implementation paths they check.

use fockcat_core::fock::{beamsplitter_apply, ModeOp, PureTwoMode};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Brute-force single-mode subtraction: system A ⊗ system B ⊗ ancilla C,
/// displacement on A, beam-splitter unitary on A–C, projection of C onto
/// |k⟩. Works mode by mode of B on a `work_dim`-sized space so the only
/// approximation left is the (exponentially small) displacement tail above
/// `work_dim`.
pub fn ancilla_branch_single(
    input: &PureTwoMode,
    alpha: Complex64,
    k: usize,
    t_s: f64,
    r_s: f64,
    work_dim: usize,
) -> PureTwoMode {
    let side = input.dim();
    assert!(work_dim >= side + k);
    // Displace mode A exactly on the enlarged space.
    let d = ModeOp::displacement(alpha, work_dim, side).unwrap();
    let displaced = d.matrix() * input.coeffs(); // work_dim × side

    let mut out = DMatrix::zeros(side, side);
    for n in 0..side {
        // State of (A, C) for this fixed Fock number of B; ancilla in vacuum.
        let mut ac = DMatrix::zeros(work_dim, work_dim);
        for p in 0..work_dim {
            ac[(p, 0)] = displaced[(p, n)];
        }
        let ac_state = PureTwoMode::from_coeffs(ac).unwrap();
        let mixed = beamsplitter_apply(&ac_state, t_s, r_s).unwrap();
        for m in 0..side {
            out[(m, n)] = mixed.coeff(m, k);
        }
    }
    PureTwoMode::from_coeffs(out).unwrap()
}

/// Eigenvalues of a complex Hermitian matrix through the real symmetric
/// embedding [[X, −Y], [Y, X]] of H = X + iY, diagonalized with a cyclic
/// real Jacobi iteration. Each eigenvalue of H appears twice in the
/// embedding; the doubled spectrum is collapsed before returning.
///
/// Deliberately implemented from scratch as a reference method.
pub fn jacobi_hermitian_eigenvalues(h: &DMatrix<Complex64>, max_sweeps: usize) -> Vec<f64> {
    let n = h.nrows();
    assert_eq!(n, h.ncols());
    let dim = 2 * n;
    let mut a = vec![vec![0.0f64; dim]; dim];
    for i in 0..n {
        for j in 0..n {
            let x = 0.5 * (h[(i, j)].re + h[(j, i)].re);
            let y = 0.5 * (h[(i, j)].im - h[(j, i)].im);
            a[i][j] = x;
            a[n + i][n + j] = x;
            a[i][n + j] = -y;
            a[n + i][j] = y;
        }
    }

    let scale: f64 = (0..dim)
        .map(|i| (0..dim).map(|j| a[i][j] * a[i][j]).sum::<f64>())
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    for _ in 0..max_sweeps {
        let mut off = 0.0;
        for p in 0..dim {
            for q in (p + 1)..dim {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..dim - 1 {
            for q in (p + 1)..dim {
                let apq = a[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..dim {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..dim {
                    let api = a[p][i];
                    let aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
        }
    }

    let mut doubled: Vec<f64> = (0..dim).map(|i| a[i][i]).collect();
    doubled.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // Collapse the exactly-doubled spectrum.
    (0..n).map(|i| 0.5 * (doubled[2 * i] + doubled[2 * i + 1])).collect()
}

/// Small deterministic PRNG for reproducible random test matrices.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [−1, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 52) as f64 * 2.0 - 1.0
    }

    pub fn hermitian(&mut self, n: usize) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(self.next_f64(), 0.0);
            for j in (i + 1)..n {
                let z = Complex64::new(self.next_f64(), self.next_f64());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }
}
