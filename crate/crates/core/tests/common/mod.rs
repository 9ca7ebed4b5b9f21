//! Shared helpers for the integration suites: independent oracles that
//! deliberately avoid the library's closed-form code paths.
//!
//! Each test binary uses its own subset of these.
#![allow(dead_code)]

use entmono_core::linalg::{expectation, ComplexMatrix};
use entmono_core::rng::SplitMix64;
use entmono_core::states::DensityOperator;
use num_complex::Complex64;

/// A random maximally entangled vector (|0⟩v₀ + |1⟩v₁)/√2 in 2⊗d, sampled
/// by Gram-Schmidt on two Gaussian vectors.
pub fn random_max_entangled(rng: &mut SplitMix64, d: usize) -> Vec<Complex64> {
    loop {
        let mut v0: Vec<Complex64> = (0..d).map(|_| rng.next_complex_gaussian()).collect();
        let n0: f64 = v0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n0 < 1e-9 {
            continue;
        }
        for z in v0.iter_mut() {
            *z /= n0;
        }
        let mut v1: Vec<Complex64> = (0..d).map(|_| rng.next_complex_gaussian()).collect();
        let overlap: Complex64 = v0.iter().zip(&v1).map(|(a, b)| a.conj() * b).sum();
        for (z, &u) in v1.iter_mut().zip(&v0) {
            *z -= overlap * u;
        }
        let n1: f64 = v1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n1 < 1e-9 {
            continue;
        }
        for z in v1.iter_mut() {
            *z /= n1;
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut e = Vec::with_capacity(2 * d);
        e.extend(v0.iter().map(|z| z * s));
        e.extend(v1.iter().map(|z| z * s));
        return e;
    }
}

/// Best ⟨e|ρ|e⟩ over `samples` random maximally entangled vectors: a lower
/// bound on the fully entangled fraction that tightens with sampling.
pub fn sampled_fef_lower_bound(rho: &DensityOperator, d: usize, samples: usize, seed: u64) -> f64 {
    let mut rng = SplitMix64::new(seed);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..samples {
        let e = random_max_entangled(&mut rng, d);
        let v = expectation(rho.matrix(), &e).unwrap().re;
        if v > best {
            best = v;
        }
    }
    best
}

/// Concurrence of an unnormalized two-qubit vector times its squared norm:
/// p·C(w/√p) = 2|w₀w₃ − w₁w₂|.
fn weighted_pure_concurrence(w: &[Complex64]) -> f64 {
    2.0 * (w[0] * w[3] - w[1] * w[2]).norm()
}

/// Average concurrence of one four-term decomposition of `rho` generated by
/// a unitary mixing of its eigenensemble: |w_k⟩ = Σ_j U_kj √λ_j |e_j⟩.
fn decomposition_average(sqrt_weighted: &[Vec<Complex64>], u: &ComplexMatrix) -> f64 {
    let mut total = 0.0;
    for k in 0..4 {
        let mut w = vec![Complex64::new(0.0, 0.0); 4];
        for (j, col) in sqrt_weighted.iter().enumerate() {
            let c = u.at(k, j);
            for (slot, &x) in w.iter_mut().zip(col) {
                *slot += c * x;
            }
        }
        total += weighted_pure_concurrence(&w);
    }
    total
}

/// Brute-force upper bound on the two-qubit mixed concurrence: the minimum
/// average pure-state concurrence over randomly sampled four-term
/// decompositions, refined by local perturbation around the best one.
///
/// Every decomposition average upper-bounds the true minimum, so this can
/// never fall below the Wootters value (up to rounding); with enough samples
/// it approaches it from above.
pub fn decomposition_min_concurrence(rho: &DensityOperator, samples: usize, seed: u64) -> f64 {
    assert_eq!(rho.dims(), [2, 2]);
    let eig = entmono_core::linalg::hermitian_eig(rho.matrix()).unwrap();
    let sqrt_weighted: Vec<Vec<Complex64>> = (0..4)
        .map(|j| {
            let lam = eig.eigenvalues[j].max(0.0);
            let scale = Complex64::new(lam.sqrt(), 0.0);
            eig.eigenvector(j).into_iter().map(|z| z * scale).collect()
        })
        .collect();

    let mut best = f64::INFINITY;
    let mut best_seed = seed;
    for t in 0..samples {
        let u = entmono_core::states::haar_unitary(4, seed.wrapping_add(t as u64));
        let avg = decomposition_average(&sqrt_weighted, &u);
        if avg < best {
            best = avg;
            best_seed = seed.wrapping_add(t as u64);
        }
    }

    // Local refinement: blend the best unitary with small random rotations.
    let mut current = entmono_core::states::haar_unitary(4, best_seed);
    let mut rng = SplitMix64::new(seed ^ 0xD1F7);
    let mut scale = 0.3f64;
    for _ in 0..2000 {
        let perturbed = perturb_unitary(&current, &mut rng, scale);
        let avg = decomposition_average(&sqrt_weighted, &perturbed);
        if avg < best {
            best = avg;
            current = perturbed;
        } else {
            scale *= 0.999;
        }
    }
    best
}

/// Re-orthonormalized U + ε·G for Gaussian G: a small random step on the
/// unitary group.
fn perturb_unitary(u: &ComplexMatrix, rng: &mut SplitMix64, eps: f64) -> ComplexMatrix {
    let n = u.rows();
    let noisy = ComplexMatrix::from_fn(n, n, |i, j| {
        u.at(i, j) + rng.next_complex_gaussian() * Complex64::new(eps, 0.0)
    });
    gram_schmidt(&noisy)
}

fn gram_schmidt(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| m.at(i, j)).collect()).collect();
    for j in 0..n {
        for i in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let overlap: Complex64 = done[i].iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
            for (z, &u) in rest[0].iter_mut().zip(&done[i]) {
                *z -= overlap * u;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}
