//! Small numeric helpers shared across modules.
//!
//! Formulas in this crate contain ratios of factorials up to roughly
//! `2 * n_max + k_max`; all of them are evaluated through a cumulative
//! log-factorial table so no intermediate factorial is ever materialized.

/// Cumulative table of ln(n!) for n = 0..=n_max.
pub(crate) fn ln_factorial_table(n_max: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n_max + 1);
    table.push(0.0);
    for n in 1..=n_max {
        table.push(table[n - 1] + (n as f64).ln());
    }
    table
}

/// sqrt(binomial(n, k)) through the log-factorial table.
pub(crate) fn sqrt_binomial(lf: &[f64], n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    (0.5 * (lf[n] - lf[k] - lf[n - k])).exp()
}
