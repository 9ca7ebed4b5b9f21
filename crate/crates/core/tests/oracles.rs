//! Independent oracle checks: quantities with a closed form in the library
//! are re-derived here by brute force (decomposition search, dense sampling,
//! Monte-Carlo moments) before the closed forms are trusted elsewhere.

mod common;

use entmono_core::measures::{concurrence_two_qubit, fef_2xd};
use entmono_core::rng::derive_seed;
use entmono_core::states::{
    haar_pure, sigma_gamma_pair, PureState, SigmaGammaParams, SigmaPair,
};
use num_complex::Complex64;

/// The Bell-diagonal concurrence 2·p_max − 1 must agree with a brute-force
/// minimization over random four-term decompositions: the search can never
/// go below the formula and should get close from above.
#[test]
fn bell_diagonal_concurrence_vs_decomposition_search() {
    for (gamma, seed) in [(0.9f64, 21u64), (0.6, 22)] {
        let params = SigmaGammaParams::new(gamma).unwrap();
        let rho = sigma_gamma_pair(&params, SigmaPair::OneThree);
        let formula = concurrence_two_qubit(&rho).unwrap();
        let closed = (12.0 * gamma - 5.0) / 7.0;
        assert!((formula - closed).abs() <= 1e-12, "gamma={gamma}");

        let searched = common::decomposition_min_concurrence(&rho, 4000, seed);
        assert!(
            searched >= formula - 1e-9,
            "decomposition average {searched} undercuts the minimum {formula}"
        );
        assert!(
            searched - formula <= 0.02,
            "search stayed far from the formula: {searched} vs {formula} at gamma={gamma}"
        );
    }
}

/// Same bound on generic mixed states: random decompositions never beat the
/// Wootters value.
#[test]
fn decomposition_search_upper_bounds_wootters() {
    for t in 0..5u64 {
        let rho = entmono_core::states::random_density(&[2, 2], 4200 + t).unwrap();
        let formula = concurrence_two_qubit(&rho).unwrap();
        let searched = common::decomposition_min_concurrence(&rho, 1500, 60 + t);
        assert!(searched >= formula - 1e-9, "t={t}: {searched} vs {formula}");
    }
}

/// For a product state the best overlap with any maximally entangled vector
/// is 1/2: dense sampling must plateau there and the optimizer must hit it.
#[test]
fn product_state_fef_by_dense_sampling() {
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[1] = Complex64::new(1.0, 0.0); // |0⟩ ⊗ |1⟩ in 2x4
    let prod = PureState::new(amps, vec![2, 4]).unwrap();
    let rho = prod.density();

    let sampled = common::sampled_fef_lower_bound(&rho, 4, 20_000, 17);
    assert!(sampled <= 0.5 + 1e-9, "sampled overlap {sampled} exceeds 1/2");
    assert!(sampled >= 0.5 - 0.02, "sampling never came near the optimum: {sampled}");

    let optimized = fef_2xd(&rho, 16, 1e-10, 3).unwrap();
    assert!((optimized.value - 0.5).abs() <= 1e-8);
}

/// The optimizer value on σ_γ is corroborated by dense sampling from below.
/// The sampled bound is loose (the maximally entangled manifold in 2⊗4 has
/// twelve real dimensions), so it witnesses soundness, not tightness.
#[test]
fn sigma_gamma_fef_dominates_dense_sampling() {
    let params = SigmaGammaParams::new(0.9).unwrap();
    let sigma = entmono_core::states::sigma_gamma_state(&params).with_dims(vec![2, 4]).unwrap();
    let optimized = fef_2xd(&sigma, 32, 1e-10, 42).unwrap();
    let sampled = common::sampled_fef_lower_bound(&sigma, 4, 20_000, 5);
    assert!(optimized.value >= sampled - 1e-9);
    assert!((optimized.value - 0.9).abs() <= 1e-6);
    assert!(optimized.value - sampled <= 0.15, "sampling far below optimizer: {sampled}");
}

/// First Haar moment: E|⟨0|ξ⟩|² = 1/2 for single-qubit states.
#[test]
fn haar_first_moment() {
    let n = 100_000u64;
    let mut acc = 0.0;
    for t in 0..n {
        let xi = haar_pure(&[2], derive_seed(31, t)).unwrap();
        acc += xi.amplitudes()[0].norm_sqr();
    }
    let mean = acc / n as f64;
    assert!((mean - 0.5).abs() <= 5e-3, "mean={mean}");
}
