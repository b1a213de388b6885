use fockcat_core::entanglement::{density_from_ensemble, log_negativity};
use fockcat_core::states::{split_smsv, SplitterParam, SqueezeParam};
use fockcat_core::subtraction::{mixed_output_double, mixed_output_single, SubtractionParams};
use fockcat_core::sweep::{
    hyperbola_point, optimize_diagonal, optimize_input_reflectance, sweep_single_alpha,
    GridSpec, Model, ScenarioConfig, Scheme,
};
use num_complex::Complex64;

fn c(x: f64) -> Complex64 { Complex64::from(x) }

fn en_single(lambda: f64, big_r: f64, rs: f64, eta: f64) -> (f64, f64) {
    let lam = SqueezeParam::new(lambda).unwrap();
    let spl = SplitterParam::from_reflectance(big_r).unwrap();
    let input = split_smsv(&lam, &spl, 10).unwrap();
    let params = SubtractionParams::from_tap_reflectance(rs, eta, 10, c(0.0), c(0.0)).unwrap();
    let ens = mixed_output_single(&input, &params).unwrap();
    let rho = density_from_ensemble(&ens).unwrap();
    (log_negativity(&rho).unwrap().value, ens.success_prob)
}

fn main() {
    // 1. E_N(R) profile for the realistic single scheme at lambda=0.2, R_S=0.1, eta=1.
    println!("--- E_N vs input reflectance R (single realistic, lambda=0.2, R_S=0.1, eta=1)");
    for i in 0..=10 {
        let big_r = 0.44 + 0.012 * i as f64;
        let (en, _) = en_single(0.2, big_r, 0.1, 1.0);
        println!("R={big_r:.3}  E_N={en:.6}");
    }
    let mut cfg = ScenarioConfig::new(Model::Realistic, Scheme::Single);
    cfg.lambda = 0.2;
    let opt = optimize_input_reflectance(&cfg).unwrap();
    println!("optimizer: R_opt={:.6} E={:.6} boundary={}", opt.reflectance_opt, opt.entanglement, opt.at_boundary);

    // 2. E_N at lambda=0.05, eta=0.1 (claim: > 0.9), and argmax over alpha.
    let (en_weak, _) = en_single(0.05, 0.5, 0.1, 0.1);
    println!("--- E_N(lambda=0.05, eta=0.1, alpha=0) = {en_weak:.6}");
    let mut cfg2 = ScenarioConfig::new(Model::Realistic, Scheme::Single);
    cfg2.lambda = 0.2;
    cfg2.alpha_grid = GridSpec::new(-0.5, 0.5, 21).unwrap();
    let sweep = sweep_single_alpha(&cfg2).unwrap();
    let best = sweep.iter().max_by(|a, b| a.entanglement.partial_cmp(&b.entanglement).unwrap()).unwrap();
    println!("realistic single argmax alpha={} E_N={:.6}", best.x, best.entanglement);

    // 3. P1 eta ratio at lambda=0.2.
    let (_, p1_full) = en_single(0.2, 0.5, 0.1, 1.0);
    let (_, p1_half) = en_single(0.2, 0.5, 0.1, 0.5);
    println!("--- P1(0.5)/P1(1) = {:.4}", p1_half / p1_full);

    // 4. Hyperbola plateau and peak at lambda=0.01.
    let lam = SqueezeParam::new(0.01).unwrap();
    let spl = SplitterParam::balanced();
    println!("--- hyperbola cut lambda=0.01:");
    for a in [0.01, 0.02, 0.03, 0.04, 0.05] {
        let rec = hyperbola_point(&lam, &spl, a, 10).unwrap();
        println!("alpha={a:.3} E={:.5}", rec.entanglement);
    }
    let peak_alpha = (0.01f64).sqrt() * spl.t();
    let peak = hyperbola_point(&lam, &spl, peak_alpha, 10).unwrap();
    println!("peak alpha={peak_alpha:.5} E={:.5}", peak.entanglement);

    // 5. alpha_opt vs sqrt(lambda/2); double vs single; P2 eta ratio; branch audit.
    println!("--- diagonal optimum:");
    for lambda in [0.05, 0.1, 0.2, 0.3] {
        let mut dc = ScenarioConfig::new(Model::Realistic, Scheme::Double);
        dc.lambda = lambda;
        let o = optimize_diagonal(&dc).unwrap();
        let pred = (lambda / 2.0f64).sqrt();
        println!(
            "lambda={lambda}: alpha_opt={:.5} sqrt(lambda/2)={pred:.5} rel={:+.3}% E_N={:.5} P2={:.3e} boundary={}",
            o.alpha_opt, 100.0 * (o.alpha_opt - pred) / pred, o.log_negativity, o.success_prob, o.at_boundary
        );
    }
    let (en_single_best, _) = en_single(0.2, 0.5, 0.1, 1.0);
    let mut dc = ScenarioConfig::new(Model::Realistic, Scheme::Double);
    dc.lambda = 0.2;
    let o1 = optimize_diagonal(&dc).unwrap();
    println!("double E_N {:.5} vs single E_N {:.5}", o1.log_negativity, en_single_best);
    dc.eta = 0.5;
    let ohalf = optimize_diagonal(&dc).unwrap();
    println!("alpha_opt eta=1: {:.5}, eta=0.5: {:.5}", o1.alpha_opt, ohalf.alpha_opt);
    dc.eta = 0.1;
    let otenth = optimize_diagonal(&dc).unwrap();
    println!("alpha_opt eta=0.1: {:.5} (rel change {:+.2}%)", otenth.alpha_opt, 100.0*(otenth.alpha_opt - o1.alpha_opt)/o1.alpha_opt);

    // P2 ratio at the eta=1 optimal displacement.
    let lam2 = SqueezeParam::new(0.2).unwrap();
    let input = split_smsv(&lam2, &SplitterParam::balanced(), 10).unwrap();
    let p2 = |eta: f64| {
        let params = SubtractionParams::from_tap_reflectance(0.1, eta, 10, c(o1.alpha_opt), c(-o1.alpha_opt)).unwrap();
        mixed_output_double(&input, &params).unwrap().success_prob
    };
    println!("P2(0.5)/P2(1) = {:.4}", p2(0.5) / p2(1.0));

    // Branch-weight audit at the optimum.
    let params = SubtractionParams::from_tap_reflectance(0.1, 1.0, 10, c(o1.alpha_opt), c(-o1.alpha_opt)).unwrap();
    let ens = mixed_output_double(&input, &params).unwrap();
    let total = ens.success_prob;
    let mut sorted: Vec<(String, f64)> = ens
        .branches
        .iter()
        .map(|b| (format!("{:?}", b.label), b.weighted_prob() / total))
        .collect();
    sorted.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    println!("--- branch weights at optimum (top 6):");
    for (label, frac) in sorted.iter().take(6) {
        println!("{label}: {:.4}", frac);
    }
}
