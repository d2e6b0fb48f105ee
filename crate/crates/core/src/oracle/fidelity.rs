//! Entanglement fidelity of encode, damp every qubit, then transpose-channel
//! recovery, and the log-log slope of the infidelity against `γ`.
//!
//! With encoder `V`, noise Kraus `N_a` and `W_a = N_a V`, the transpose
//! channel has Kraus `P N_b† N(P)^{-1/2}`. The logical Kraus operators of
//! recovery after noise are then the `d × d` blocks of `(W†W)^{1/2}`, and
//! `F_e = d⁻² Σ_{a,b} |tr block_{b,a}|²`.

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_cap, codewords, DampingParameter, DenseState, DENSITY_CAP};
use crate::error::{Error, Result};
use crate::stabcode::StabilizerCode;

pub const DEFAULT_GAMMAS: [f64; 4] = [1e-3, 2e-3, 5e-3, 1e-2];

/// Points used for the slope, smallest `γ` first.
const FIT_POINTS: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityResult {
    pub code: String,
    pub t: usize,
    pub gammas: Vec<f64>,
    pub infidelities: Vec<f64>,
    pub fitted_exponent: f64,
    /// RMS residual of the fit in natural-log units.
    pub fit_residual: f64,
}

impl FidelityResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma,infidelity\n");
        for (g, e) in self.gammas.iter().zip(&self.infidelities) {
            out.push_str(&format!("{g:e},{e:e}\n"));
        }
        out
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

/// Damping patterns kept in the noise model: at most `max_events` decays.
fn damping_patterns(n: usize, max_events: usize) -> Vec<usize> {
    (0..=max_events.min(n))
        .flat_map(|w| (0..n).combinations(w))
        .map(|qs| qs.into_iter().fold(0usize, |m, q| m | 1 << (n - 1 - q)))
        .collect()
}

fn entanglement_fidelity(basis: &[DenseState], n: usize, gamma: f64, patterns: &[usize]) -> f64 {
    let d = basis.len();
    let dim = 1usize << n;
    let cols = patterns.len() * d;
    let mut w = DMatrix::<Complex64>::zeros(dim, cols);
    let keep = (1.0 - gamma).sqrt();
    let decay = gamma.sqrt();
    for (a, &mask) in patterns.iter().enumerate() {
        let events = mask.count_ones() as i32;
        for (j, psi) in basis.iter().enumerate() {
            for i in 0..dim {
                let amp = psi[i];
                if i & mask != mask || amp == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let survivors = (i & !mask).count_ones() as i32;
                let scale = decay.powi(events) * keep.powi(survivors);
                w[(i & !mask, a * d + j)] += amp * scale;
            }
        }
    }
    // (W†W)^{1/2} = V Σ V† from the SVD of W; going through eigenvalues of
    // W†W would turn rounding noise ε on its null space into √ε
    let svd = w.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let sigma = svd.singular_values.map(|s| Complex64::new(s, 0.0));
    let sqrt_g = v_t.adjoint() * DMatrix::from_diagonal(&sigma) * &v_t;
    let mut total = 0.0;
    for a in 0..patterns.len() {
        for b in 0..patterns.len() {
            let tr: Complex64 = (0..d).map(|i| sqrt_g[(b * d + i, a * d + i)]).sum();
            total += tr.norm_sqr();
        }
    }
    total / (d * d) as f64
}

/// Least-squares slope and RMS residual of `y` against `x`.
fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - my - slope * (a - mx)).powi(2)).sum();
    (slope, (rss / m).sqrt())
}

/// Measures `1 - F_e(γ)` for each `γ` and fits the exponent on the smallest
/// three. Noise keeps patterns of up to `t + 2` decays, one order beyond
/// the leading uncorrectable term.
pub fn fidelity_experiment(code: &StabilizerCode, t: usize, gammas: &[f64]) -> Result<FidelityResult> {
    let n = code.n();
    check_cap("fidelity_experiment", n, DENSITY_CAP)?;
    if gammas.len() < FIT_POINTS {
        return Err(Error::DegenerateFit(format!("need at least {FIT_POINTS} damping rates")));
    }
    for &g in gammas {
        DampingParameter::new(g)?;
        if !(g > 0.0 && g <= 0.05) {
            return Err(Error::Precondition(format!("damping rate {g} outside (0, 0.05]")));
        }
    }
    let basis = codewords(code)?;
    let patterns = damping_patterns(n, t + 2);
    let mut gammas = gammas.to_vec();
    gammas.sort_by(f64::total_cmp);
    let infidelities: Vec<f64> =
        gammas.par_iter().map(|&g| (1.0 - entanglement_fidelity(&basis, n, g, &patterns)).clamp(0.0, 1.0)).collect();
    if infidelities.iter().all(|&e| e < 1e-14) {
        return Err(Error::DegenerateFit("all infidelities below 1e-14".into()));
    }
    let fit = &infidelities[..FIT_POINTS];
    if fit.iter().any(|&e| e <= 0.0) {
        return Err(Error::DegenerateFit("zero infidelity among fitted points".into()));
    }
    let xs: Vec<f64> = gammas[..FIT_POINTS].iter().map(|g| g.ln()).collect();
    let ys: Vec<f64> = fit.iter().map(|e| e.ln()).collect();
    let (fitted_exponent, fit_residual) = fit_line(&xs, &ys);
    Ok(FidelityResult { code: code.name().to_string(), t, gammas, infidelities, fitted_exponent, fit_residual })
}
