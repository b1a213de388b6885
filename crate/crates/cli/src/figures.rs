//! Figure data pipelines: each command resolves caption defaults, runs the
//! sweep, and renders a CSV with documented columns.

use fockcat_core::error::Result;
use fockcat_core::states::{SplitterParam, SqueezeParam};
use fockcat_core::sweep::{
    curves_vs_lambda, diagonal_cut, hyperbola_cut, optimize_diagonal,
    qutrit_entropy_vs_reflectance, sweep_double_grid, sweep_single_alpha, GridSpec, Model,
    ScenarioConfig, Scheme, SweepRecord,
};

use crate::manifest::Manifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureName {
    Fig2,
    Fig3,
    Fig4a,
    Fig4b,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureName {
    pub fn file_stem(self) -> &'static str {
        match self {
            FigureName::Fig2 => "fig2",
            FigureName::Fig3 => "fig3",
            FigureName::Fig4a => "fig4a",
            FigureName::Fig4b => "fig4b",
            FigureName::Fig5 => "fig5",
            FigureName::Fig6 => "fig6",
            FigureName::Fig7 => "fig7",
        }
    }
}

/// Command-line overrides; unset fields fall back to the caption defaults
/// of the selected figure.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub lambda: Option<f64>,
    pub big_r: Option<Vec<f64>>,
    pub tap: Option<f64>,
    pub eta: Option<Vec<f64>>,
    pub n_max: Option<usize>,
    pub k_max: Option<usize>,
}

pub struct FigureData {
    pub file_name: String,
    pub csv: String,
    pub rows: usize,
    pub flagged: usize,
    pub max_tail: f64,
}

struct CsvBuilder {
    body: String,
    rows: usize,
    flagged: usize,
    max_tail: f64,
}

impl CsvBuilder {
    fn new(header: &str) -> Self {
        Self {
            body: format!("{header}\n"),
            rows: 0,
            flagged: 0,
            max_tail: 0.0,
        }
    }

    fn push(&mut self, cells: &[String], record: Option<&SweepRecord>) {
        self.body.push_str(&cells.join(","));
        self.body.push('\n');
        self.rows += 1;
        if let Some(rec) = record {
            self.max_tail = self.max_tail.max(rec.tail_fraction);
            if rec.flagged {
                self.flagged += 1;
            }
        }
    }

    fn into_data(self, file_name: String) -> FigureData {
        FigureData {
            file_name,
            csv: self.body,
            rows: self.rows,
            flagged: self.flagged,
            max_tail: self.max_tail,
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn base_config(model: Model, scheme: Scheme, ov: &Overrides) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::new(model, scheme);
    if let Some(n_max) = ov.n_max {
        cfg.n_max = n_max;
        cfg.k_max = n_max;
    }
    if let Some(k_max) = ov.k_max {
        cfg.k_max = k_max;
    }
    if let Some(tap) = ov.tap {
        cfg.tap_reflectance = tap;
    }
    cfg
}

fn record_common(manifest: &mut Manifest, cfg: &ScenarioConfig) {
    manifest.set("nmax", cfg.n_max);
    manifest.set("kmax", cfg.k_max);
}

pub fn generate(name: FigureName, ov: &Overrides, manifest: &mut Manifest) -> Result<FigureData> {
    match name {
        FigureName::Fig2 => fig2(ov, manifest),
        FigureName::Fig3 => fig3(ov, manifest),
        FigureName::Fig4a => fig4a(ov, manifest),
        FigureName::Fig4b => fig4b(ov, manifest),
        FigureName::Fig5 => fig5(ov, manifest),
        FigureName::Fig6 => fig6(ov, manifest),
        FigureName::Fig7 => fig7(ov, manifest),
    }
}

/// Entropy of entanglement vs. displacement for ideal single-mode
/// filtering at weak squeezing, one curve group per input reflectance.
fn fig2(ov: &Overrides, manifest: &mut Manifest) -> Result<FigureData> {
    let lambda = ov.lambda.unwrap_or(0.01);
    let reflectances = ov.big_r.clone().unwrap_or_else(|| vec![0.5, 1.0 / 3.0]);
    let mut cfg = base_config(Model::Ideal, Scheme::Single, ov);
    cfg.lambda = lambda;
    cfg.alpha_grid = GridSpec::new(-0.2, 0.2, 81)?;
    manifest.set("lambda", lambda);
    manifest.set(
        "R",
        reflectances
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    manifest.set("alpha_grid", "linspace(-0.2,0.2,81)");
    record_common(manifest, &cfg);

    let mut csv = CsvBuilder::new("R,alpha,E_S");
    for &big_r in &reflectances {
        cfg.input_reflectance = big_r;
        for rec in sweep_single_alpha(&cfg)? {
            csv.push(&[fmt(big_r), fmt(rec.x), fmt(rec.entanglement)], Some(&rec));
        }
    }
    Ok(csv.into_data("fig2.csv".into()))
}

/// Entropy of entanglement on the (α, β) grid for ideal two-mode filtering
/// at weak squeezing.
fn fig3(ov: &Overrides, manifest: &mut Manifest) -> Result<FigureData> {
    let lambda = ov.lambda.unwrap_or(0.01);
    let big_r = ov.big_r.as_ref().map_or(0.5, |v| v[0]);
    let mut cfg = base_config(Model::Ideal, Scheme::Double, ov);
    cfg.lambda = lambda;
    cfg.input_reflectance = big_r;
    cfg.alpha_grid = GridSpec::new(-0.2, 0.2, 41)?;
    cfg.beta_grid = cfg.alpha_grid;
    manifest.set("lambda", lambda);
    manifest.set("R", big_r);
    manifest.set("alpha_grid", "linspace(-0.2,0.2,41)");
    manifest.set("beta_grid", "linspace(-0.2,0.2,41)");
    record_common(manifest, &cfg);

    let mut csv = CsvBuilder::new("alpha,beta,E_S");
    for row in sweep_double_grid(&cfg)? {
        for rec in row {
            csv.push(
                &[fmt(rec.x), fmt(rec.y.unwrap()), fmt(rec.entanglement)],
                Some(&rec),
            );
        }
    }
    Ok(csv.into_data("fig3.csv".into()))
}

/// Entropy along the reciprocal cut β = −λrt/α (α = 0 skipped).
fn fig4a(ov: &Overrides, manifest: &mut Manifest) -> Result<FigureData> {
    let lambda = ov.lambda.unwrap_or(0.01);
    let big_r = ov.big_r.as_ref().map_or(0.5, |v| v[0]);
    let n_max = ov.n_max.unwrap_or(10);
    let grid = GridSpec::new(-0.2, 0.2, 161)?;
    manifest.set("lambda", lambda);
    manifest.set("R", big_r);
    manifest.set("alpha_grid", "linspace(-0.2,0.2,161)");
    manifest.set("nmax", n_max);

    let lam = SqueezeParam::new(lambda)?;
    let spl = SplitterParam::from_reflectance(big_r)?;
    let mut csv = CsvBuilder::new("alpha,beta,E_S");
    for rec in hyperbola_cut(&lam, &spl, &grid, n_max)? {
        csv.push(
            &[fmt(rec.x), fmt(rec.y.unwrap()), fmt(rec.entanglement)],
            Some(&rec),
        );
    }
    Ok(csv.into_data("fig4a.csv".into()))
}

/// Entropy of the two-photon target state vs. input reflectance.
fn fig4b(ov: &Overrides, manifest: &mut Manifest) -> Result<FigureData> {
    let n_max = ov.n_max.unwrap_or(10);
    let grid = GridSpec::new(0.01, 0.99, 99)?;
    manifest.set("R_grid", "linspace(0.01,0.99,99)");
    manifest.set("nmax", n_max);

    let mut csv = CsvBuilder::new("R,E_S");
    for rec in qutrit_entropy_vs_reflectance(&grid, n_max)? {
        csv.push(&[fmt(rec.x), fmt(rec.entanglement)], Some(&rec));
    }
    Ok(csv.into_data("fig4b.csv".into()))
}

/// Realistic single-mode scheme. Panel `a`: E_N vs. α at fixed λ. Panel
/// `bc`: E_N and P₁ vs. λ at α = 0. One curve group per η.
fn fig5(ov: &Overrides, manifest: &mut Manifest) -> Result<FigureData> {
    let lambda = ov.lambda.unwrap_or(0.2);
    let big_r = ov.big_r.as_ref().map_or(0.5, |v| v[0]);
    let etas = ov.eta.clone().unwrap_or_else(|| vec![1.0, 0.5, 0.1]);
    let mut cfg = base_config(Model::Realistic, Scheme::Single, ov);
    cfg.input_reflectance = big_r;
    cfg.alpha_grid = GridSpec::new(-0.75, 0.75, 41)?;
    let lambda_grid = GridSpec::new(0.05, 0.4, 15)?;
    manifest.set("lambda", lambda);
    manifest.set("R", big_r);
    manifest.set("Rs", cfg.tap_reflectance);
    manifest.set(
        "eta",
        etas.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","),
    );
    manifest.set("alpha_grid", "linspace(-0.75,0.75,41)");
    manifest.set("lambda_grid", "linspace(0.05,0.4,15)");
    record_common(manifest, &cfg);

    let mut csv = CsvBuilder::new("panel,eta,lambda,alpha,E_N,P1");
    for &eta in &etas {
        cfg.eta = eta;
        cfg.lambda = lambda;
        for rec in sweep_single_alpha(&cfg)? {
            csv.push(
                &[
                    "a".into(),
                    fmt(eta),
                    fmt(lambda),
                    fmt(rec.x),
                    fmt(rec.entanglement),
                    fmt(rec.success_prob.unwrap_or(f64::NAN)),
                ],
                Some(&rec),
            );
        }
    }
    for rec in curves_vs_lambda(&cfg, &lambda_grid, &etas)? {
        csv.push(
            &[
                "bc".into(),
                fmt(rec.y.unwrap()),
                fmt(rec.x),
                fmt(0.0),
                fmt(rec.entanglement),
                fmt(rec.success_prob.unwrap_or(f64::NAN)),
            ],
            Some(&rec),
        );
    }
    Ok(csv.into_data("fig5.csv".into()))
}

/// Realistic two-mode scheme. Panel `a`: E_N over the (α, β) grid. Panel
/// `b`: the β = −α diagonal cut.
fn fig6(ov: &Overrides, manifest: &mut Manifest) -> Result<FigureData> {
    let lambda = ov.lambda.unwrap_or(0.2);
    let big_r = ov.big_r.as_ref().map_or(0.5, |v| v[0]);
    let eta = ov.eta.as_ref().map_or(1.0, |v| v[0]);
    let mut cfg = base_config(Model::Realistic, Scheme::Double, ov);
    cfg.lambda = lambda;
    cfg.input_reflectance = big_r;
    cfg.eta = eta;
    cfg.alpha_grid = GridSpec::new(-0.8, 0.8, 33)?;
    cfg.beta_grid = cfg.alpha_grid;
    let diag_grid = GridSpec::new(0.0, 0.8, 41)?;
    manifest.set("lambda", lambda);
    manifest.set("R", big_r);
    manifest.set("Rs", cfg.tap_reflectance);
    manifest.set("eta", eta);
    manifest.set("alpha_grid", "linspace(-0.8,0.8,33)");
    manifest.set("diagonal_grid", "linspace(0,0.8,41)");
    record_common(manifest, &cfg);

    let mut csv = CsvBuilder::new("panel,alpha,beta,E_N,P2");
    for row in sweep_double_grid(&cfg)? {
        for rec in row {
            csv.push(
                &[
                    "a".into(),
                    fmt(rec.x),
                    fmt(rec.y.unwrap()),
                    fmt(rec.entanglement),
                    fmt(rec.success_prob.unwrap_or(f64::NAN)),
                ],
                Some(&rec),
            );
        }
    }
    for rec in diagonal_cut(&cfg, &diag_grid)? {
        csv.push(
            &[
                "b".into(),
                fmt(rec.x),
                fmt(rec.y.unwrap()),
                fmt(rec.entanglement),
                fmt(rec.success_prob.unwrap_or(f64::NAN)),
            ],
            Some(&rec),
        );
    }
    Ok(csv.into_data("fig6.csv".into()))
}

/// Optimal diagonal displacement, resulting E_N and P₂ vs. squeezing, one
/// curve group per η.
fn fig7(ov: &Overrides, manifest: &mut Manifest) -> Result<FigureData> {
    let etas = ov.eta.clone().unwrap_or_else(|| vec![1.0, 0.5, 0.1]);
    let big_r = ov.big_r.as_ref().map_or(0.5, |v| v[0]);
    let mut cfg = base_config(Model::Realistic, Scheme::Double, ov);
    cfg.input_reflectance = big_r;
    let lambda_grid = GridSpec::new(0.01, 0.4, 14)?;
    manifest.set("R", big_r);
    manifest.set("Rs", cfg.tap_reflectance);
    manifest.set(
        "eta",
        etas.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","),
    );
    manifest.set("lambda_grid", "linspace(0.01,0.4,14)");
    record_common(manifest, &cfg);

    let mut csv = CsvBuilder::new("eta,lambda,alpha_opt,E_N,P2");
    for &eta in &etas {
        for &lam_val in &lambda_grid.points() {
            cfg.eta = eta;
            cfg.lambda = lam_val;
            let opt = optimize_diagonal(&cfg)?;
            csv.push(
                &[
                    fmt(eta),
                    fmt(lam_val),
                    fmt(opt.alpha_opt),
                    fmt(opt.log_negativity),
                    fmt(opt.success_prob),
                ],
                None,
            );
        }
    }
    Ok(csv.into_data("fig7.csv".into()))
}
