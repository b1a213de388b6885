//! Single-scenario evaluation: entanglement, success probability, branch
//! weights and truncation health for one parameter set.

use fockcat_core::entanglement::{
    density_from_ensemble, entropy_of_entanglement, log_negativity,
};
use fockcat_core::error::Result;
use fockcat_core::fock::{PureTwoMode, TAIL_TOL};
use fockcat_core::states::{split_smsv, SplitterParam, SqueezeParam};
use fockcat_core::subtraction::{
    filter_double_ideal, filter_single_ideal, mixed_output_double, mixed_output_single,
    BranchEnsemble, BranchLabel, SubtractionParams,
};
use fockcat_core::sweep::{Model, Scheme, FLAG_TOL};
use fockcat_core::Complex64;
use serde_json::json;

pub struct RunParams {
    pub scheme: Scheme,
    pub model: Model,
    pub lambda: f64,
    pub big_r: f64,
    pub tap: f64,
    pub eta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub n_max: usize,
    pub k_max: usize,
}

pub struct RunOutcome {
    pub text: String,
    pub json: serde_json::Value,
    pub flagged: bool,
}

fn relative_tail(state: &PureTwoMode) -> f64 {
    let norm2 = state.norm2();
    if norm2 <= 0.0 {
        0.0
    } else {
        state.truncation_report(TAIL_TOL).tail_weight / norm2
    }
}

fn ensemble_rows(ensemble: &BranchEnsemble) -> (Vec<serde_json::Value>, String, f64) {
    let mut rows = Vec::new();
    let mut text = String::from("branches (label, herald weight, norm2, weighted):\n");
    let mut max_tail = 0.0f64;
    for branch in &ensemble.branches {
        let norm2 = branch.state.norm2();
        let weighted = branch.weighted_prob();
        if weighted < 1e-300 && norm2 < 1e-300 {
            continue;
        }
        max_tail = max_tail.max(relative_tail(&branch.state));
        let label = match branch.label {
            BranchLabel::Single { k } => format!("k={k}"),
            BranchLabel::Double { k, l } => format!("k={k},l={l}"),
        };
        text.push_str(&format!(
            "  {label:>9}  {:.6}  {:.6e}  {:.6e}\n",
            branch.herald_weight, norm2, weighted
        ));
        rows.push(json!({
            "label": label,
            "herald_weight": branch.herald_weight,
            "norm2": norm2,
            "weighted": weighted,
        }));
    }
    (rows, text, max_tail)
}

pub fn execute(p: &RunParams) -> Result<RunOutcome> {
    let lam = SqueezeParam::new(p.lambda)?;
    let spl = SplitterParam::from_reflectance(p.big_r)?;
    let input = split_smsv(&lam, &spl, p.n_max)?;
    let alpha = Complex64::from(p.alpha);
    let beta = Complex64::from(p.beta);

    let mut text = format!(
        "scheme: {:?}, model: {:?}\nlambda = {}, R = {}, Rs = {}, eta = {}, alpha = {}, beta = {}, nmax = {}, kmax = {}\n",
        p.scheme, p.model, p.lambda, p.big_r, p.tap, p.eta, p.alpha, p.beta, p.n_max, p.k_max
    );
    let mut payload = json!({
        "scheme": format!("{:?}", p.scheme),
        "model": format!("{:?}", p.model),
        "lambda": p.lambda,
        "R": p.big_r,
        "Rs": p.tap,
        "eta": p.eta,
        "alpha": p.alpha,
        "beta": p.beta,
        "nmax": p.n_max,
        "kmax": p.k_max,
    });
    let object = payload.as_object_mut().expect("payload is an object");

    let max_tail;
    match p.model {
        Model::Ideal => {
            let filtered = match p.scheme {
                Scheme::Single => filter_single_ideal(&input, alpha)?,
                Scheme::Double => filter_double_ideal(&input, alpha, beta)?,
            };
            let entropy = entropy_of_entanglement(&filtered)?;
            let weight = filtered.norm2() / input.norm2();
            max_tail = relative_tail(&filtered);
            text.push_str(&format!(
                "E_S = {:.9} bits\nfilter_weight = {:.6e} (squared filter norm per unit input)\n",
                entropy.value, weight
            ));
            object.insert("E_S".into(), json!(entropy.value));
            object.insert("filter_weight".into(), json!(weight));
        }
        Model::Realistic => {
            let params = SubtractionParams::from_tap_reflectance(
                p.tap, p.eta, p.k_max, alpha, beta,
            )?;
            let (ensemble, prob_name) = match p.scheme {
                Scheme::Single => (mixed_output_single(&input, &params)?, "P1"),
                Scheme::Double => (mixed_output_double(&input, &params)?, "P2"),
            };
            let rho = density_from_ensemble(&ensemble)?;
            let negativity = log_negativity(&rho)?;
            let (rows, branch_text, tail) = ensemble_rows(&ensemble);
            max_tail = tail;
            text.push_str(&format!(
                "E_N = {:.9} bits\n{prob_name} = {:.9e}\n{branch_text}",
                negativity.value, ensemble.success_prob
            ));
            object.insert("E_N".into(), json!(negativity.value));
            object.insert(prob_name.into(), json!(ensemble.success_prob));
            object.insert("branches".into(), json!(rows));
        }
    }

    let flagged = max_tail > FLAG_TOL;
    text.push_str(&format!(
        "truncation: max tail fraction {max_tail:.3e} ({})\n",
        if flagged { "FLAGGED" } else { "ok" }
    ));
    object.insert("truncation_max_tail_fraction".into(), json!(max_tail));
    object.insert("truncation_flagged".into(), json!(flagged));

    Ok(RunOutcome {
        text,
        json: payload,
        flagged,
    })
}
