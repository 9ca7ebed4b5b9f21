//! Monogamy inequality residuals and the σ_γ counterexample analysis.
//!
//! For an n-qubit pure state the single-party-vs-rest quantity squared must
//! dominate the sum of squared pairwise quantities. Three variants share
//! one report shape:
//!
//! * concurrence: C²₁₍₂…ₙ₎ ≥ Σⱼ C²₁ⱼ (no clamping);
//! * fully entangled fraction: (2F₁₍₂…ₙ₎−1)² ≥ Σⱼ (2·max(F₁ⱼ,½)−1)²;
//! * teleportation fidelity: (3f₁₍₂…ₙ₎−2)² ≥ Σⱼ (3·max(f₁ⱼ,⅔)−2)².
//!
//! On mixed states the FEF/fidelity variants fail: along the σ_γ family the
//! 2⊗4 FEF of the full state drops below the FEF of its (1,3) two-qubit
//! reduction whenever γ < 1. [`counterexample_row`] quantifies that per γ.

use alloc::{format, vec, vec::Vec};

use crate::measures::{
    clamp_pair_quantities, concurrence_pure, concurrence_two_qubit, fef_2xd, fef_pure,
    fef_two_qubit, fidelity_from_fef,
};
use crate::rng::derive_seed;
use crate::states::{sigma_gamma_pair, sigma_gamma_state, PureState, SigmaGammaParams, SigmaPair};
use crate::{Error, Result};

/// Margin below zero at which a residual counts as a genuine violation
/// rather than numeric noise.
pub const VIOLATION_MARGIN: f64 = 1e-9;

/// Which quantity a monogamy report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonogamyKind {
    Concurrence,
    Fef,
    Fidelity,
}

/// One pairwise term of a monogamy right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTerm {
    /// Partner subsystem index (0-based; the focus party is index 0).
    pub partner: usize,
    /// Raw pair quantity (C₁ⱼ, F₁ⱼ or f₁ⱼ).
    pub raw: f64,
    /// After the teleportation-usefulness clamp (identity for concurrence).
    pub clamped: f64,
    /// The squared term entering the right-hand sum.
    pub squared: f64,
}

/// Left-hand side, pairwise terms and residual of one monogamy inequality.
#[derive(Debug, Clone)]
pub struct MonogamyReport {
    pub kind: MonogamyKind,
    /// The quantity that is squared on the left (C, 2F−1 or 3f−2).
    pub lhs_value: f64,
    pub pair_terms: Vec<PairTerm>,
    /// Σ of the squared pair terms.
    pub rhs_sum: f64,
    /// lhs² − rhs_sum.
    pub residual: f64,
    /// residual ≥ −1e-9.
    pub holds: bool,
}

impl MonogamyReport {
    fn assemble(kind: MonogamyKind, lhs_value: f64, pair_terms: Vec<PairTerm>) -> Self {
        let rhs_sum: f64 = pair_terms.iter().map(|t| t.squared).sum();
        let residual = lhs_value * lhs_value - rhs_sum;
        MonogamyReport { kind, lhs_value, pair_terms, rhs_sum, residual, holds: residual >= -VIOLATION_MARGIN }
    }
}

fn require_small_qubit_register(psi: &PureState) -> Result<usize> {
    let n = psi.dims().len();
    if psi.dims().iter().any(|&d| d != 2) {
        return Err(Error::Argument(format!("all subsystems must be qubits, got dims {:?}", psi.dims())));
    }
    if !(3..=5).contains(&n) {
        return Err(Error::Argument(format!("expected 3 to 5 qubits, got {n}")));
    }
    Ok(n)
}

/// Concurrence monogamy residual for a pure n-qubit state, focus on the
/// first qubit: C²₁₍₂…ₙ₎ − Σⱼ C²₁ⱼ.
pub fn ckw_residual(psi: &PureState) -> Result<MonogamyReport> {
    let n = require_small_qubit_register(psi)?;
    let lhs = concurrence_pure(psi)?;
    let full = psi.density();
    let mut terms = Vec::with_capacity(n - 1);
    for j in 1..n {
        let pair = full.partial_trace(&[0, j])?;
        let c = concurrence_two_qubit(&pair)?;
        terms.push(PairTerm { partner: j, raw: c, clamped: c, squared: c * c });
    }
    Ok(MonogamyReport::assemble(MonogamyKind::Concurrence, lhs, terms))
}

/// FEF monogamy residual: (2F₁₍₂…ₙ₎−1)² − Σⱼ (2·max(F₁ⱼ,½)−1)².
pub fn fef_monogamy_residual(psi: &PureState) -> Result<MonogamyReport> {
    let n = require_small_qubit_register(psi)?;
    let lhs = 2.0 * fef_pure(&psi.as_bipartite()?)? - 1.0;
    let full = psi.density();
    let mut terms = Vec::with_capacity(n - 1);
    for j in 1..n {
        let pair = full.partial_trace(&[0, j])?;
        let f = fef_two_qubit(&pair)?.value;
        let q = clamp_pair_quantities(f)?;
        let term = 2.0 * q.fef_clamped - 1.0;
        terms.push(PairTerm { partner: j, raw: f, clamped: q.fef_clamped, squared: term * term });
    }
    Ok(MonogamyReport::assemble(MonogamyKind::Fef, lhs, terms))
}

/// Teleportation-fidelity monogamy residual:
/// (3f₁₍₂…ₙ₎−2)² − Σⱼ (3·max(f₁ⱼ,⅔)−2)².
///
/// Because 3f−2 = 2F−1 under f = (2F+1)/3, the residual agrees with the
/// FEF report up to rounding.
pub fn fidelity_monogamy_residual(psi: &PureState) -> Result<MonogamyReport> {
    let n = require_small_qubit_register(psi)?;
    let f_all = fidelity_from_fef(fef_pure(&psi.as_bipartite()?)?)?;
    let lhs = 3.0 * f_all - 2.0;
    let full = psi.density();
    let mut terms = Vec::with_capacity(n - 1);
    for j in 1..n {
        let pair = full.partial_trace(&[0, j])?;
        let fef = fef_two_qubit(&pair)?.value;
        let q = clamp_pair_quantities(fef)?;
        let term = 3.0 * q.fid_clamped - 2.0;
        terms.push(PairTerm { partner: j, raw: q.fid_raw, clamped: q.fid_clamped, squared: term * term });
    }
    Ok(MonogamyReport::assemble(MonogamyKind::Fidelity, lhs, terms))
}

/// One γ-point of the σ_γ counterexample analysis.
///
/// Raw (unclamped) quantities are always reported so both readings of the
/// mixed-state inequality, clamped and literal, can be checked from the
/// row; the violation flags use the clamped convention on both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleRow {
    pub gamma: f64,
    /// α = (1−γ)/7.
    pub alpha: f64,
    /// FEF of σ_γ across the 1|(23) split, from the 2⊗4 optimizer.
    pub fef_1_23: f64,
    /// FEF of the (1,2) reduction (closed-form two-qubit route).
    pub fef_12: f64,
    /// FEF of the (1,3) reduction (closed-form two-qubit route).
    pub fef_13: f64,
    /// Teleportation fidelity (2·F₁₍₂₃₎+1)/3.
    pub fid_1_23: f64,
    /// Teleportation fidelity (2·F₁₃+1)/3.
    pub fid_13: f64,
    /// Wootters concurrence of the (1,3) reduction.
    pub c_13: f64,
    /// (2·max(F₁₍₂₃₎,½)−1)² < (2·max(F₁₂,½)−1)² + (2·max(F₁₃,½)−1)² − 1e-9.
    pub fef_violated: bool,
    /// Same with fidelities and the 2/3 clamp.
    pub fid_violated: bool,
    /// C₁₃ > 2·F₁₍₂₃₎ − 1 + 1e-9: the computable witness that the
    /// concurrence of the full state strictly exceeds 2F−1 (its pairwise
    /// concurrence monogamy lower bound C₁₍₂₃₎ ≥ C₁₃ supplies the rest).
    pub strictness_proxy: bool,
}

/// Compute one counterexample row at `gamma`.
///
/// F₁₍₂₃₎ comes from [`fef_2xd`] on σ_γ viewed as `[2,4]`; F₁₃ and F₁₂ from
/// the two-qubit closed form on the reductions. F₁₃ is cross-checked against
/// the Bell-diagonal closed form max(2α, α+γ) and a mismatch is a numeric
/// error.
pub fn counterexample_row(gamma: f64, restarts: usize, tol: f64, seed: u64) -> Result<CounterexampleRow> {
    let params = SigmaGammaParams::new(gamma)?;
    let sigma = sigma_gamma_state(&params);
    let sigma_24 = sigma.with_dims(vec![2, 4])?;

    let fef_1_23 = fef_2xd(&sigma_24, restarts, tol, derive_seed(seed, 0))?.value;

    let pair_13 = sigma_gamma_pair(&params, SigmaPair::OneThree);
    let fef_13 = fef_two_qubit(&pair_13)?.value;
    let expected_f_13 = (2.0 * params.alpha).max(params.alpha + params.gamma);
    if (fef_13 - expected_f_13).abs() > 1e-9 {
        return Err(Error::Numeric(format!(
            "two-qubit FEF {fef_13} of the (1,3) reduction deviates from the Bell-diagonal closed form {expected_f_13}"
        )));
    }

    let pair_12 = sigma_gamma_pair(&params, SigmaPair::OneTwo);
    let fef_12 = fef_two_qubit(&pair_12)?.value;

    let c_13 = concurrence_two_qubit(&pair_13)?;

    let fid_1_23 = fidelity_from_fef(fef_1_23)?;
    let fid_13 = fidelity_from_fef(fef_13)?;

    let lhs_f = 2.0 * fef_1_23.max(0.5) - 1.0;
    let t12_f = 2.0 * fef_12.max(0.5) - 1.0;
    let t13_f = 2.0 * fef_13.max(0.5) - 1.0;
    let fef_violated = lhs_f * lhs_f < t12_f * t12_f + t13_f * t13_f - VIOLATION_MARGIN;

    let two_thirds = 2.0 / 3.0;
    let fid_12 = fidelity_from_fef(fef_12)?;
    let lhs_t = 3.0 * fid_1_23.max(two_thirds) - 2.0;
    let t12_t = 3.0 * fid_12.max(two_thirds) - 2.0;
    let t13_t = 3.0 * fid_13.max(two_thirds) - 2.0;
    let fid_violated = lhs_t * lhs_t < t12_t * t12_t + t13_t * t13_t - VIOLATION_MARGIN;

    let strictness_proxy = c_13 > 2.0 * fef_1_23 - 1.0 + VIOLATION_MARGIN;

    Ok(CounterexampleRow {
        gamma,
        alpha: params.alpha,
        fef_1_23,
        fef_12,
        fef_13,
        fid_1_23,
        fid_13,
        c_13,
        fef_violated,
        fid_violated,
        strictness_proxy,
    })
}

/// One counterexample row per grid point, each with its own derived seed.
/// Per-row failures are collected so the sweep continues past them.
pub fn gamma_sweep(grid: &[f64], restarts: usize, tol: f64, seed: u64) -> Vec<Result<CounterexampleRow>> {
    grid.iter()
        .enumerate()
        .map(|(idx, &gamma)| counterexample_row(gamma, restarts, tol, derive_seed(seed, idx as u64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_state, haar_pure, BellKind};
    use crate::Complex64;
    use alloc::vec;

    const DEFAULT_TOL: f64 = 1e-10;

    fn ghz() -> PureState {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0] = Complex64::new(s, 0.0);
        amps[7] = Complex64::new(s, 0.0);
        PureState::new(amps, vec![2, 2, 2]).unwrap()
    }

    fn w_state() -> PureState {
        let t = 1.0 / libm::sqrt(3.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        for idx in [0b001, 0b010, 0b100] {
            amps[idx] = Complex64::new(t, 0.0);
        }
        PureState::new(amps, vec![2, 2, 2]).unwrap()
    }

    fn qubit_times_bell() -> PureState {
        // |0⟩ ⊗ |φ⁺⟩: party 1 unentangled.
        let bell = bell_state(BellKind::PhiPlus);
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[..4].copy_from_slice(bell.amplitudes());
        PureState::new(amps, vec![2, 2, 2]).unwrap()
    }

    #[test]
    fn ckw_on_ghz() {
        let report = ckw_residual(&ghz()).unwrap();
        assert!((report.lhs_value - 1.0).abs() <= 1e-10);
        for term in &report.pair_terms {
            assert!(term.raw.abs() <= 1e-10, "GHZ pair concurrence should vanish");
        }
        assert!((report.residual - 1.0).abs() <= 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn ckw_on_w_state_is_tight() {
        let report = ckw_residual(&w_state()).unwrap();
        assert!((report.lhs_value * report.lhs_value - 8.0 / 9.0).abs() <= 1e-10);
        for term in &report.pair_terms {
            assert!((term.raw - 2.0 / 3.0).abs() <= 1e-10);
            assert!((term.squared - 4.0 / 9.0).abs() <= 1e-10);
        }
        assert!(report.residual.abs() <= 1e-9, "W saturates the inequality");
        assert!(report.holds);
    }

    #[test]
    fn ckw_on_product_of_qubit_and_bell() {
        let report = ckw_residual(&qubit_times_bell()).unwrap();
        assert!(report.lhs_value.abs() <= 1e-10);
        assert!(report.rhs_sum.abs() <= 1e-10);
        assert!(report.residual.abs() <= 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn fef_residual_on_ghz() {
        let report = fef_monogamy_residual(&ghz()).unwrap();
        assert!((report.lhs_value - 1.0).abs() <= 1e-10);
        for term in &report.pair_terms {
            // GHZ pair reductions have F = 1/2: clamping floors the terms.
            assert!((term.raw - 0.5).abs() <= 1e-10);
            assert!(term.squared.abs() <= 1e-12);
        }
        assert!((report.residual - 1.0).abs() <= 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn fef_residual_on_unentangled_focus() {
        let report = fef_monogamy_residual(&qubit_times_bell()).unwrap();
        assert!(report.lhs_value.abs() <= 1e-10);
        assert!(report.rhs_sum.abs() <= 1e-12);
        assert!(report.residual.abs() <= 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn fidelity_residual_equals_fef_residual() {
        for t in 0..20u64 {
            let psi = haar_pure(&[2, 2, 2], 3000 + t).unwrap();
            let fef = fef_monogamy_residual(&psi).unwrap();
            let fid = fidelity_monogamy_residual(&psi).unwrap();
            assert!((fef.residual - fid.residual).abs() <= 1e-12, "t={t}");
        }
        let fid = fidelity_monogamy_residual(&ghz()).unwrap();
        assert!((fid.residual - 1.0).abs() <= 1e-9);
        let fid = fidelity_monogamy_residual(&qubit_times_bell()).unwrap();
        assert!(fid.residual.abs() <= 1e-9);
    }

    #[test]
    fn monogamy_rejects_bad_registers() {
        let two = haar_pure(&[2, 2], 1).unwrap();
        assert!(ckw_residual(&two).is_err());
        let qutrit = haar_pure(&[2, 3, 2], 1).unwrap();
        assert!(ckw_residual(&qutrit).is_err());
    }

    #[test]
    fn report_rhs_matches_terms() {
        let psi = haar_pure(&[2, 2, 2, 2], 77).unwrap();
        let report = fef_monogamy_residual(&psi).unwrap();
        let sum: f64 = report.pair_terms.iter().map(|t| t.squared).sum();
        assert!((report.rhs_sum - sum).abs() <= 1e-12);
        assert_eq!(report.pair_terms.len(), 3);
        assert_eq!(report.holds, report.residual >= -VIOLATION_MARGIN);
    }

    #[test]
    fn counterexample_row_at_nine_tenths() {
        let row = counterexample_row(0.9, 32, DEFAULT_TOL, 42).unwrap();
        assert!((row.fef_1_23 - 0.9).abs() <= 1e-6);
        assert!((row.fef_13 - 0.9142857142857143).abs() <= 1e-12);
        assert!((row.fid_13 - (4.0 * 0.9 + 3.0) / 7.0).abs() <= 1e-9);
        assert!((row.fid_1_23 - (2.0 * row.fef_1_23 + 1.0) / 3.0).abs() <= 1e-12);
        assert!(row.fef_violated);
        assert!(row.fid_violated);
        // C_13 = 0.8285714... > 2·0.9 − 1 = 0.8.
        assert!(row.strictness_proxy);
    }

    #[test]
    fn counterexample_row_at_one_is_tight() {
        let row = counterexample_row(1.0, 32, DEFAULT_TOL, 42).unwrap();
        assert!((row.fef_1_23 - 1.0).abs() <= 1e-6);
        assert!((row.fef_13 - 1.0).abs() <= 1e-12);
        assert!(row.fef_12 <= 0.5 + 1e-9, "the (1,2) reduction is separable");
        assert!(!row.fef_violated);
        assert!(!row.fid_violated);
    }

    #[test]
    fn counterexample_row_clamped_region() {
        // γ = 0.45: the left side clamps to 1/2 while F_13 > 1/2, so the
        // clamped convention already reports a violation.
        let row = counterexample_row(0.45, 32, DEFAULT_TOL, 42).unwrap();
        assert!(row.fef_1_23 < 0.5);
        assert!((row.fef_13 - 0.5285714285714286).abs() <= 1e-12);
        assert!(row.fef_violated);
        assert!(row.fid_violated);
    }

    #[test]
    fn sweep_collects_rows_in_grid_order() {
        let grid = [0.5, 0.75, 0.99, 1.0];
        let rows = gamma_sweep(&grid, 16, DEFAULT_TOL, 7);
        assert_eq!(rows.len(), 4);
        for (gamma, row) in grid.iter().zip(&rows) {
            let row = row.as_ref().unwrap();
            assert_eq!(row.gamma, *gamma);
        }
        assert!(rows[0].as_ref().unwrap().fef_violated);
        assert!(rows[1].as_ref().unwrap().fef_violated);
        assert!(rows[2].as_ref().unwrap().fef_violated);
        assert!(!rows[3].as_ref().unwrap().fef_violated);
    }

    #[test]
    fn sweep_is_deterministic() {
        let grid = [0.3, 0.6];
        let a = gamma_sweep(&grid, 8, DEFAULT_TOL, 11);
        let b = gamma_sweep(&grid, 8, DEFAULT_TOL, 11);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.as_ref().unwrap(), y.as_ref().unwrap());
        }
    }
}
