//! Parameter sweeps and scalar optimizers over displacement and splitter
//! settings: single-displacement curves, two-displacement grids, the
//! reciprocal-displacement cut, entanglement/probability versus squeezing,
//! and optimal-displacement searches.
//!
//! Sweep points are independent pure computations; with the `parallel`
//! feature they are evaluated concurrently and always assembled in grid
//! order, so identical configurations produce bit-identical records.

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::entanglement::{density_from_ensemble, entropy_of_entanglement, log_negativity};
use crate::error::{FockError, Result};
use crate::fock::PureTwoMode;
use crate::states::{qutrit_state, split_smsv, SplitterParam, SqueezeParam};
use crate::subtraction::{
    filter_double_ideal, filter_single_ideal, mixed_output_double, mixed_output_single,
    BranchEnsemble, SubtractionParams,
};

/// Records whose truncation tail exceeds this fraction of the norm are
/// flagged (a warning; sweeps never abort mid-grid).
pub const FLAG_TOL: f64 = 1e-4;

/// Coarse-scan bracket for the diagonal displacement optimizer.
pub const DIAGONAL_BRACKET: (f64, f64) = (0.0, 1.0);

/// Coarse-scan bracket for the input-reflectance optimizer.
pub const REFLECTANCE_BRACKET: (f64, f64) = (0.40, 0.60);

/// Number of coarse-scan points before golden-section refinement.
pub const COARSE_POINTS: usize = 41;

/// Refinement stop: |Δx| of the final bracket.
pub const REFINE_XTOL: f64 = 1e-4;

/// Which subtraction model drives an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Displaced-annihilation filters on pure states; entropy of
    /// entanglement.
    Ideal,
    /// Tap-off beam splitter with on/off detectors; heralded mixtures and
    /// logarithmic negativity.
    Realistic,
}

/// Whether one or both modes are filtered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Single,
    Double,
}

/// Inclusive linear grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(FockError::InvalidParameter(format!(
                "grid needs at least 2 points, got {count}"
            )));
        }
        if !(min.is_finite() && max.is_finite()) || max < min {
            return Err(FockError::InvalidParameter(format!(
                "invalid grid range [{min}, {max}]"
            )));
        }
        Ok(Self { min, max, count })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + i as f64 * step).collect()
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }
}

/// Full description of a sweep scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub model: Model,
    pub scheme: Scheme,
    /// Squeezing parameter λ = tanh s.
    pub lambda: f64,
    /// Intensity reflectance R = r² of the input splitter.
    pub input_reflectance: f64,
    /// Intensity reflectance R_S = r_S² of the tap-off splitters.
    pub tap_reflectance: f64,
    /// Detector efficiency η.
    pub eta: f64,
    pub n_max: usize,
    pub k_max: usize,
    pub alpha_grid: GridSpec,
    pub beta_grid: GridSpec,
}

impl ScenarioConfig {
    /// Paper-default parameters: λ = 0.2, balanced input splitter,
    /// R_S = 0.1, perfect detectors, n_max = 10, k_max = n_max.
    pub fn new(model: Model, scheme: Scheme) -> Self {
        let grid = GridSpec {
            min: -0.75,
            max: 0.75,
            count: 61,
        };
        Self {
            model,
            scheme,
            lambda: 0.2,
            input_reflectance: 0.5,
            tap_reflectance: 0.1,
            eta: 1.0,
            n_max: 10,
            k_max: 10,
            alpha_grid: grid,
            beta_grid: grid,
        }
    }

    pub fn validate(&self) -> Result<()> {
        SqueezeParam::new(self.lambda)?;
        SplitterParam::from_reflectance(self.input_reflectance)?;
        if !(0.0..=1.0).contains(&self.tap_reflectance) || !self.tap_reflectance.is_finite() {
            return Err(FockError::InvalidParameter(format!(
                "tap reflectance must lie in [0, 1], got {}",
                self.tap_reflectance
            )));
        }
        if !(0.0..=1.0).contains(&self.eta) || !self.eta.is_finite() {
            return Err(FockError::InvalidParameter(format!(
                "detector efficiency must lie in [0, 1], got {}",
                self.eta
            )));
        }
        if self.n_max < 2 {
            return Err(FockError::InvalidDimension(
                "sweeps need n_max >= 2".into(),
            ));
        }
        if self.k_max < 1 {
            return Err(FockError::InvalidParameter(
                "k_max must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn squeeze(&self) -> Result<SqueezeParam> {
        SqueezeParam::new(self.lambda)
    }

    fn splitter(&self) -> Result<SplitterParam> {
        SplitterParam::from_reflectance(self.input_reflectance)
    }

    fn subtraction(&self, alpha: f64, beta: f64) -> Result<SubtractionParams> {
        SubtractionParams::from_tap_reflectance(
            self.tap_reflectance,
            self.eta,
            self.k_max,
            Complex64::from(alpha),
            Complex64::from(beta),
        )
    }

    fn input_state(&self) -> Result<PureTwoMode> {
        split_smsv(&self.squeeze()?, &self.splitter()?, self.n_max)
    }
}

/// One evaluated sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    /// Primary swept parameter value.
    pub x: f64,
    /// Secondary parameter (β on a grid, η of a curve family), when present.
    pub y: Option<f64>,
    /// Entanglement in bits: entropy for ideal pure outputs, logarithmic
    /// negativity for realistic mixtures.
    pub entanglement: f64,
    /// Success probability, when the model defines one (realistic only).
    pub success_prob: Option<f64>,
    /// Truncation tail as a fraction of the squared norm.
    pub tail_fraction: f64,
    /// True when `tail_fraction` exceeds [`FLAG_TOL`].
    pub flagged: bool,
}

fn record(x: f64, y: Option<f64>, entanglement: f64, success: Option<f64>, tail: f64) -> SweepRecord {
    SweepRecord {
        x,
        y,
        entanglement,
        success_prob: success,
        tail_fraction: tail,
        flagged: tail > FLAG_TOL,
    }
}

fn relative_tail(state: &PureTwoMode) -> f64 {
    let norm2 = state.norm2();
    if norm2 <= 0.0 {
        return 0.0;
    }
    state.truncation_report(crate::fock::TAIL_TOL).tail_weight / norm2
}

fn ensemble_tail(ensemble: &BranchEnsemble) -> f64 {
    if ensemble.success_prob <= 0.0 {
        return 0.0;
    }
    let weighted: f64 = ensemble
        .branches
        .iter()
        .map(|b| {
            b.herald_weight
                * b.state
                    .truncation_report(crate::fock::TAIL_TOL)
                    .tail_weight
        })
        .sum();
    weighted / ensemble.success_prob
}

fn eval_ideal_single(cfg: &ScenarioConfig, alpha: f64) -> Result<SweepRecord> {
    let input = cfg.input_state()?;
    let filtered = filter_single_ideal(&input, Complex64::from(alpha))?;
    let entropy = entropy_of_entanglement(&filtered)?;
    Ok(record(alpha, None, entropy.value, None, relative_tail(&filtered)))
}

fn eval_ideal_double(cfg: &ScenarioConfig, alpha: f64, beta: f64) -> Result<SweepRecord> {
    let input = cfg.input_state()?;
    let filtered = filter_double_ideal(&input, Complex64::from(alpha), Complex64::from(beta))?;
    let entropy = entropy_of_entanglement(&filtered)?;
    Ok(record(
        alpha,
        Some(beta),
        entropy.value,
        None,
        relative_tail(&filtered),
    ))
}

fn eval_realistic_single(cfg: &ScenarioConfig, alpha: f64) -> Result<SweepRecord> {
    let input = cfg.input_state()?;
    let params = cfg.subtraction(alpha, 0.0)?;
    let ensemble = mixed_output_single(&input, &params)?;
    let rho = density_from_ensemble(&ensemble)?;
    let negativity = log_negativity(&rho)?;
    Ok(record(
        alpha,
        None,
        negativity.value,
        Some(ensemble.success_prob),
        ensemble_tail(&ensemble),
    ))
}

fn eval_realistic_double(cfg: &ScenarioConfig, alpha: f64, beta: f64) -> Result<SweepRecord> {
    let input = cfg.input_state()?;
    let params = cfg.subtraction(alpha, beta)?;
    let ensemble = mixed_output_double(&input, &params)?;
    let rho = density_from_ensemble(&ensemble)?;
    let negativity = log_negativity(&rho)?;
    Ok(record(
        alpha,
        Some(beta),
        negativity.value,
        Some(ensemble.success_prob),
        ensemble_tail(&ensemble),
    ))
}

fn try_map_ordered<I, O, F>(items: Vec<I>, f: F) -> Result<Vec<O>>
where
    I: Send,
    O: Send,
    F: Fn(I) -> Result<O> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Entanglement versus displacement α for the single-mode scheme.
pub fn sweep_single_alpha(cfg: &ScenarioConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    if cfg.scheme != Scheme::Single {
        return Err(FockError::InvalidParameter(
            "sweep_single_alpha needs the single scheme".into(),
        ));
    }
    let points = cfg.alpha_grid.points();
    match cfg.model {
        Model::Ideal => try_map_ordered(points, |a| eval_ideal_single(cfg, a)),
        Model::Realistic => try_map_ordered(points, |a| eval_realistic_single(cfg, a)),
    }
}

/// Entanglement over the (α, β) displacement grid for the two-mode scheme.
/// The outer index runs over α, the inner over β.
pub fn sweep_double_grid(cfg: &ScenarioConfig) -> Result<Vec<Vec<SweepRecord>>> {
    cfg.validate()?;
    if cfg.scheme != Scheme::Double {
        return Err(FockError::InvalidParameter(
            "sweep_double_grid needs the double scheme".into(),
        ));
    }
    let alphas = cfg.alpha_grid.points();
    let betas = cfg.beta_grid.points();
    let pairs: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| betas.iter().map(move |&b| (a, b)))
        .collect();
    let flat = match cfg.model {
        Model::Ideal => try_map_ordered(pairs, |(a, b)| eval_ideal_double(cfg, a, b))?,
        Model::Realistic => try_map_ordered(pairs, |(a, b)| eval_realistic_double(cfg, a, b))?,
    };
    Ok(flat
        .chunks(betas.len())
        .map(|row| row.to_vec())
        .collect())
}

/// One point of the reciprocal-displacement cut β = −λrt/α (ideal model).
pub fn hyperbola_point(
    lambda: &SqueezeParam,
    splitter: &SplitterParam,
    alpha: f64,
    n_max: usize,
) -> Result<SweepRecord> {
    if alpha.abs() < 1e-12 {
        return Err(FockError::InvalidParameter(
            "the reciprocal cut is undefined at alpha = 0".into(),
        ));
    }
    let beta = -lambda.lambda() * splitter.r() * splitter.t() / alpha;
    let input = split_smsv(lambda, splitter, n_max)?;
    let filtered = filter_double_ideal(&input, Complex64::from(alpha), Complex64::from(beta))?;
    let entropy = entropy_of_entanglement(&filtered)?;
    Ok(record(
        alpha,
        Some(beta),
        entropy.value,
        None,
        relative_tail(&filtered),
    ))
}

/// Ideal-model entanglement along the reciprocal cut. Grid points at
/// α = 0 (where the cut is undefined) are skipped.
pub fn hyperbola_cut(
    lambda: &SqueezeParam,
    splitter: &SplitterParam,
    alpha_grid: &GridSpec,
    n_max: usize,
) -> Result<Vec<SweepRecord>> {
    let points: Vec<f64> = alpha_grid
        .points()
        .into_iter()
        .filter(|a| a.abs() >= 1e-12)
        .collect();
    try_map_ordered(points, |a| hyperbola_point(lambda, splitter, a, n_max))
}

/// Entropy of entanglement of the two-photon target state as a function of
/// the input-splitter intensity reflectance R ∈ (0, 1).
pub fn qutrit_entropy_vs_reflectance(r_grid: &GridSpec, n_max: usize) -> Result<Vec<SweepRecord>> {
    if r_grid.min <= 0.0 || r_grid.max >= 1.0 {
        return Err(FockError::InvalidParameter(
            "reflectance grid must lie strictly inside (0, 1)".into(),
        ));
    }
    try_map_ordered(r_grid.points(), |big_r| {
        let splitter = SplitterParam::from_reflectance(big_r)?;
        let state = qutrit_state(&splitter, n_max)?;
        let entropy = entropy_of_entanglement(&state)?;
        Ok(record(big_r, None, entropy.value, None, relative_tail(&state)))
    })
}

/// Realistic two-mode scheme along the diagonal β = −α.
pub fn diagonal_cut(cfg: &ScenarioConfig, alpha_grid: &GridSpec) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    if cfg.scheme != Scheme::Double || cfg.model != Model::Realistic {
        return Err(FockError::InvalidParameter(
            "diagonal_cut needs the realistic double scheme".into(),
        ));
    }
    try_map_ordered(alpha_grid.points(), |a| eval_realistic_double(cfg, a, -a))
}

/// Result of a scalar maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalOptimum {
    pub alpha_opt: f64,
    pub log_negativity: f64,
    pub success_prob: f64,
    /// Final refinement bracket around the maximizer.
    pub bracket: (f64, f64),
    /// Set when the coarse scan peaked at a bracket boundary (flat or
    /// monotone landscape); no refinement is attempted in that case.
    pub at_boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectanceOptimum {
    pub reflectance_opt: f64,
    pub entanglement: f64,
    pub bracket: (f64, f64),
    pub at_boundary: bool,
}

/// Golden-section maximization of `f` on [a, b] down to |b − a| ≤ xtol.
fn golden_max<F>(f: F, mut a: f64, mut b: f64, xtol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while (b - a).abs() > xtol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 > f2 { (x1, f1) } else { (x2, f2) })
}

/// Coarse scan plus golden-section refinement; returns (x, f(x), bracket,
/// at_boundary).
fn scan_and_refine<F>(f: F, lo: f64, hi: f64) -> Result<(f64, f64, (f64, f64), bool)>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    let grid = GridSpec::new(lo, hi, COARSE_POINTS)?;
    let points = grid.points();
    let values = try_map_ordered(points.clone(), |x| f(x))?;
    let (best, _) = values
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.partial_cmp(b).expect("finite objective"))
        .expect("nonempty grid");
    if best == 0 || best == points.len() - 1 {
        let bracket = if best == 0 {
            (points[0], points[1])
        } else {
            (points[points.len() - 2], points[points.len() - 1])
        };
        return Ok((points[best], values[best], bracket, true));
    }
    let bracket = (points[best - 1], points[best + 1]);
    let (x, fx) = golden_max(&f, bracket.0, bracket.1, REFINE_XTOL)?;
    // The refined point must not fall below the coarse maximum.
    if fx >= values[best] {
        Ok((x, fx, bracket, false))
    } else {
        Ok((points[best], values[best], bracket, false))
    }
}

/// Optimal diagonal displacement for the realistic two-mode scheme: coarse
/// scan over α ∈ [0, 1] followed by golden-section refinement.
pub fn optimize_diagonal(cfg: &ScenarioConfig) -> Result<DiagonalOptimum> {
    cfg.validate()?;
    if cfg.scheme != Scheme::Double || cfg.model != Model::Realistic {
        return Err(FockError::InvalidParameter(
            "optimize_diagonal needs the realistic double scheme".into(),
        ));
    }
    let objective =
        |alpha: f64| eval_realistic_double(cfg, alpha, -alpha).map(|r| r.entanglement);
    let (alpha_opt, _, bracket, at_boundary) =
        scan_and_refine(objective, DIAGONAL_BRACKET.0, DIAGONAL_BRACKET.1)?;
    let at_opt = eval_realistic_double(cfg, alpha_opt, -alpha_opt)?;
    Ok(DiagonalOptimum {
        alpha_opt,
        log_negativity: at_opt.entanglement,
        success_prob: at_opt.success_prob.unwrap_or(0.0),
        bracket,
        at_boundary,
    })
}

/// Per-λ curves: the single scheme is evaluated at α = 0, the double scheme
/// at its optimal diagonal displacement, once per requested η. Records are
/// ordered η-major, λ-minor with x = λ and y = η.
pub fn curves_vs_lambda(
    cfg: &ScenarioConfig,
    lambda_grid: &GridSpec,
    etas: &[f64],
) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    if cfg.model != Model::Realistic {
        return Err(FockError::InvalidParameter(
            "curves_vs_lambda needs the realistic model".into(),
        ));
    }
    if etas.is_empty() {
        return Err(FockError::InvalidParameter(
            "curves_vs_lambda needs at least one detector efficiency".into(),
        ));
    }
    let lambdas = lambda_grid.points();
    let mut jobs = Vec::with_capacity(etas.len() * lambdas.len());
    for &eta in etas {
        for &lambda in &lambdas {
            jobs.push((eta, lambda));
        }
    }
    try_map_ordered(jobs, |(eta, lambda)| {
        let mut point_cfg = *cfg;
        point_cfg.eta = eta;
        point_cfg.lambda = lambda;
        point_cfg.validate()?;
        let rec = match cfg.scheme {
            Scheme::Single => eval_realistic_single(&point_cfg, 0.0)?,
            Scheme::Double => {
                let opt = optimize_diagonal(&point_cfg)?;
                record(
                    opt.alpha_opt,
                    None,
                    opt.log_negativity,
                    Some(opt.success_prob),
                    0.0,
                )
            }
        };
        Ok(SweepRecord {
            x: lambda,
            y: Some(eta),
            ..rec
        })
    })
}

/// Optimal input-splitter reflectance for the single scheme at α = 0.
pub fn optimize_input_reflectance(cfg: &ScenarioConfig) -> Result<ReflectanceOptimum> {
    cfg.validate()?;
    if cfg.scheme != Scheme::Single {
        return Err(FockError::InvalidParameter(
            "optimize_input_reflectance needs the single scheme".into(),
        ));
    }
    let objective = |big_r: f64| -> Result<f64> {
        let mut point_cfg = *cfg;
        point_cfg.input_reflectance = big_r;
        match cfg.model {
            Model::Ideal => eval_ideal_single(&point_cfg, 0.0).map(|r| r.entanglement),
            Model::Realistic => eval_realistic_single(&point_cfg, 0.0).map(|r| r.entanglement),
        }
    };
    let (reflectance_opt, entanglement, bracket, at_boundary) =
        scan_and_refine(objective, REFLECTANCE_BRACKET.0, REFLECTANCE_BRACKET.1)?;
    Ok(ReflectanceOptimum {
        reflectance_opt,
        entanglement,
        bracket,
        at_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ideal_single_cfg(lambda: f64, big_r: f64) -> ScenarioConfig {
        let mut cfg = ScenarioConfig::new(Model::Ideal, Scheme::Single);
        cfg.lambda = lambda;
        cfg.input_reflectance = big_r;
        cfg.alpha_grid = GridSpec::new(-0.2, 0.2, 41).unwrap();
        cfg
    }

    fn argmax(records: &[SweepRecord]) -> &SweepRecord {
        records
            .iter()
            .max_by(|a, b| a.entanglement.partial_cmp(&b.entanglement).unwrap())
            .unwrap()
    }

    #[test]
    fn ideal_single_peaks_at_zero_displacement() {
        let records = sweep_single_alpha(&ideal_single_cfg(0.01, 0.5)).unwrap();
        let best = argmax(&records);
        assert!(best.x.abs() < 1e-9, "argmax at {}", best.x);
        assert_abs_diff_eq!(best.entanglement, 1.0, epsilon = 5e-3);
    }

    #[test]
    fn ideal_single_binary_entropy_value() {
        let records = sweep_single_alpha(&ideal_single_cfg(0.01, 1.0 / 3.0)).unwrap();
        let best = argmax(&records);
        assert!(best.x.abs() < 1e-9);
        let h = |p: f64| -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert_abs_diff_eq!(best.entanglement, h(1.0 / 3.0), epsilon = 5e-3);
    }

    #[test]
    fn scheme_mismatch_is_rejected() {
        let cfg = ScenarioConfig::new(Model::Ideal, Scheme::Double);
        assert!(sweep_single_alpha(&cfg).is_err());
        let cfg = ScenarioConfig::new(Model::Ideal, Scheme::Single);
        assert!(sweep_double_grid(&cfg).is_err());
    }

    #[test]
    fn double_grid_sign_symmetry() {
        // Even-parity input: E(α, β) = E(−α, −β).
        let mut cfg = ScenarioConfig::new(Model::Ideal, Scheme::Double);
        cfg.lambda = 0.01;
        cfg.alpha_grid = GridSpec::new(-0.1, 0.1, 3).unwrap();
        cfg.beta_grid = GridSpec::new(-0.1, 0.1, 3).unwrap();
        let grid = sweep_double_grid(&cfg).unwrap();
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let e = grid[i][j].entanglement;
                let mirrored = grid[n - 1 - i][n - 1 - j].entanglement;
                assert_abs_diff_eq!(e, mirrored, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn hyperbola_cut_skips_zero() {
        let lam = SqueezeParam::new(0.01).unwrap();
        let spl = SplitterParam::balanced();
        let grid = GridSpec::new(-0.05, 0.05, 5).unwrap(); // contains 0
        let records = hyperbola_cut(&lam, &spl, &grid, 10).unwrap();
        assert_eq!(records.len(), 4);
        assert!(records.iter().all(|r| r.x.abs() > 1e-12));
    }

    #[test]
    fn hyperbola_cut_even_in_alpha() {
        let lam = SqueezeParam::new(0.01).unwrap();
        let spl = SplitterParam::balanced();
        let plus = hyperbola_point(&lam, &spl, 0.03, 10).unwrap();
        let minus = hyperbola_point(&lam, &spl, -0.03, 10).unwrap();
        assert_abs_diff_eq!(plus.entanglement, minus.entanglement, epsilon = 1e-9);
    }

    #[test]
    fn qutrit_curve_values_and_symmetry() {
        let grid = GridSpec::new(0.1, 0.9, 9).unwrap();
        let records = qutrit_entropy_vs_reflectance(&grid, 6).unwrap();
        let mid = &records[4];
        assert_abs_diff_eq!(mid.x, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(mid.entanglement, 1.5, epsilon = 1e-12);
        for i in 0..records.len() {
            let j = records.len() - 1 - i;
            assert_abs_diff_eq!(
                records[i].entanglement,
                records[j].entanglement,
                epsilon = 1e-10
            );
        }
        // R → 0 approaches the product state (entropy decays like −R·log R).
        let low = qutrit_entropy_vs_reflectance(&GridSpec::new(0.0001, 0.001, 2).unwrap(), 6)
            .unwrap();
        assert!(low[1].entanglement < 0.05);
        assert!(low[0].entanglement < low[1].entanglement);
    }

    #[test]
    fn qutrit_curve_rejects_degenerate_reflectance() {
        assert!(qutrit_entropy_vs_reflectance(&GridSpec::new(0.0, 0.9, 3).unwrap(), 6).is_err());
    }

    #[test]
    fn diagonal_cut_zero_endpoint_matches_undisplaced() {
        let mut cfg = ScenarioConfig::new(Model::Realistic, Scheme::Double);
        cfg.n_max = 8;
        cfg.k_max = 8;
        let grid = GridSpec::new(0.0, 0.4, 3).unwrap();
        let records = diagonal_cut(&cfg, &grid).unwrap();
        let direct = eval_realistic_double(&cfg, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(records[0].entanglement, direct.entanglement, epsilon = 1e-12);
    }

    #[test]
    fn mode_swap_symmetry_at_balanced_splitter() {
        let cfg = ScenarioConfig::new(Model::Realistic, Scheme::Double);
        let ab = eval_realistic_double(&cfg, 0.3, -0.1).unwrap();
        let ba = eval_realistic_double(&cfg, -0.1, 0.3).unwrap();
        assert_abs_diff_eq!(ab.entanglement, ba.entanglement, epsilon = 1e-8);
    }

    #[test]
    fn optimal_diagonal_near_weak_squeezing_prediction() {
        let mut cfg = ScenarioConfig::new(Model::Realistic, Scheme::Double);
        cfg.lambda = 0.1;
        cfg.n_max = 8;
        cfg.k_max = 8;
        let opt = optimize_diagonal(&cfg).unwrap();
        assert!(!opt.at_boundary);
        let prediction = (0.1f64 / 2.0).sqrt();
        assert!(
            (opt.alpha_opt - prediction).abs() / prediction < 0.1,
            "alpha_opt {} vs {}",
            opt.alpha_opt,
            prediction
        );
        // Optimizer sanity: maximizer beats the bracket endpoints.
        let f = |a: f64| {
            eval_realistic_double(&cfg, a, -a)
                .map(|r| r.entanglement)
                .unwrap()
        };
        assert!(opt.log_negativity >= f(opt.bracket.0));
        assert!(opt.log_negativity >= f(opt.bracket.1));
    }

    #[test]
    fn sweeps_are_deterministic() {
        let cfg = ideal_single_cfg(0.05, 0.5);
        let first = sweep_single_alpha(&cfg).unwrap();
        let second = sweep_single_alpha(&cfg).unwrap();
        for (a, b) in first.iter().zip(second.iter()) {
            assert_eq!(a.entanglement.to_bits(), b.entanglement.to_bits());
            assert_eq!(a.x.to_bits(), b.x.to_bits());
        }
    }

    #[test]
    fn curves_vs_lambda_record_layout() {
        let mut cfg = ScenarioConfig::new(Model::Realistic, Scheme::Single);
        cfg.n_max = 6;
        cfg.k_max = 6;
        let grid = GridSpec::new(0.1, 0.3, 3).unwrap();
        let records = curves_vs_lambda(&cfg, &grid, &[1.0, 0.5]).unwrap();
        assert_eq!(records.len(), 6);
        assert_abs_diff_eq!(records[0].y.unwrap(), 1.0, epsilon = 0.0);
        assert_abs_diff_eq!(records[3].y.unwrap(), 0.5, epsilon = 0.0);
        assert_abs_diff_eq!(records[0].x, 0.1, epsilon = 1e-15);
        assert!(records.iter().all(|r| r.success_prob.is_some()));
    }

    #[test]
    fn reflectance_optimizer_ideal_weak_limit() {
        let mut cfg = ScenarioConfig::new(Model::Ideal, Scheme::Single);
        cfg.lambda = 0.01;
        let opt = optimize_input_reflectance(&cfg).unwrap();
        assert!(!opt.at_boundary);
        assert_abs_diff_eq!(opt.reflectance_opt, 0.5, epsilon = 2e-3);
    }
}
