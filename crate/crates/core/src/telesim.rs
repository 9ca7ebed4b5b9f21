//! Standard teleportation over a two-qubit channel state.
//!
//! [`build_channel`] rotates the channel state so its FEF-optimal maximally
//! entangled vector lands on |φ⁺⟩, then assembles the induced qubit channel
//! Λ_ρ: Bell measurement on (input, Alice half), Pauli corrections
//! {I, σ_z, σ_x, σ_x·σ_z} on Bob's half. With that frame the scheme attains
//! the maximal average fidelity f = (2F+1)/3, which the exact and
//! Monte-Carlo estimators below validate against each other.

use alloc::{format, vec::Vec};
use num_complex::Complex64;

use crate::linalg::{self, ComplexMatrix};
use crate::measures::fef_two_qubit;
use crate::rng::SplitMix64;
use crate::states::{bell_state, sample_haar_amplitudes, BellKind, DensityOperator};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A teleportation scheme over a two-qubit channel state, represented by
/// its (trace-normalized) Choi matrix.
#[derive(Debug, Clone)]
pub struct TeleportChannel {
    /// The channel state ρ the scheme runs over.
    pub channel_state: DensityOperator,
    /// Local unitaries (U_A, U_B) mapping the FEF-optimal vector to |φ⁺⟩.
    pub correction_frame: (ComplexMatrix, ComplexMatrix),
    /// (id ⊗ Λ)(|φ⁺⟩⟨φ⁺|): 4×4, trace 1, PSD, Tr_out = I/2.
    pub choi_matrix: ComplexMatrix,
    /// Λ(|i⟩⟨j|) for (i,j) in row-major order; cached for fast sampling.
    basis_action: [ComplexMatrix; 4],
}

/// Monte-Carlo estimate of the average teleportation fidelity, next to the
/// exact value from the entanglement fidelity.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportEstimate {
    pub mc_mean: f64,
    /// Sample standard deviation / √samples.
    pub mc_std_err: f64,
    pub exact_value: f64,
    pub samples: usize,
    pub seed: u64,
}

impl TeleportEstimate {
    /// Whether the estimate is statistically consistent with the exact
    /// value: |mean − exact| ≤ 4·stderr, with a small absolute floor for
    /// zero-variance channels.
    pub fn is_consistent(&self) -> bool {
        (self.mc_mean - self.exact_value).abs() <= 4.0 * self.mc_std_err + 1e-12
    }
}

/// Build the standard teleportation scheme over `rho`.
pub fn build_channel(rho: &DensityOperator) -> Result<TeleportChannel> {
    if rho.dims() != [2, 2] {
        return Err(Error::Argument(format!(
            "teleportation channel state must have dims [2,2], got {:?}",
            rho.dims()
        )));
    }

    // Frame: (I ⊗ U_B)|e⟩ = |φ⁺⟩ where |e⟩ maximizes ⟨e|ρ|e⟩. Writing the
    // amplitudes of |e⟩ as a 2×2 matrix E, √2·E is unitary and U_B = √2·E*.
    let fef = fef_two_qubit(rho)?;
    let e = fef.optimal_vector;
    let e_mat = ComplexMatrix::from_fn(2, 2, |i, j| e.amplitudes()[2 * i + j]);
    let u_b = e_mat.conj().scale_re(libm::sqrt(2.0));
    let u_a = ComplexMatrix::identity(2);

    let rot = linalg::kron(&u_a, &u_b)?;
    let rotated = rot.mul(rho.matrix())?.mul(&rot.adjoint())?;

    // Measurement projectors on (input, Alice) and Bob's matching
    // corrections. ψ⁻ needs the composite correction σ_x·σ_z.
    let corrections: [(BellKind, ComplexMatrix); 4] = [
        (BellKind::PhiPlus, ComplexMatrix::identity(2)),
        (BellKind::PhiMinus, linalg::pauli_z()),
        (BellKind::PsiPlus, linalg::pauli_x()),
        (BellKind::PsiMinus, linalg::pauli_x().mul(&linalg::pauli_z())?),
    ];

    let i2 = ComplexMatrix::identity(2);
    let mut basis_action: Vec<ComplexMatrix> = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            // Input slot carries |i⟩⟨j|; linearity recovers Λ on any state.
            let mut omega = ComplexMatrix::zeros(2, 2);
            omega.set(i, j, Complex64::new(1.0, 0.0));
            let joint = linalg::kron(&omega, &rotated)?;

            let mut out = ComplexMatrix::zeros(2, 2);
            for (kind, sigma) in &corrections {
                let bell = bell_state(*kind);
                let projector = linalg::outer(bell.amplitudes(), bell.amplitudes());
                let measured = linalg::kron(&projector, &i2)?.mul(&joint)?;
                let bob = linalg::partial_trace(&measured, &[2, 2, 2], &[2])?;
                let corrected = sigma.mul(&bob)?.mul(&sigma.adjoint())?;
                out = out.add(&corrected)?;
            }
            basis_action.push(out);
        }
    }
    let basis_action: [ComplexMatrix; 4] =
        basis_action.try_into().expect("four basis matrices were pushed");

    // Choi matrix (id ⊗ Λ)(|φ⁺⟩⟨φ⁺|): block (i,j) is Λ(|i⟩⟨j|)/2.
    let mut choi = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            let block = &basis_action[2 * i + j];
            for r in 0..2 {
                for c in 0..2 {
                    choi.set(2 * i + r, 2 * j + c, block.at(r, c) * 0.5);
                }
            }
        }
    }

    // Physicality gates: complete positivity and trace preservation.
    let eig = linalg::hermitian_eig(&choi)?;
    let min_eig = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if min_eig < -1e-10 {
        return Err(Error::Numeric(format!(
            "assembled Choi matrix has negative eigenvalue {min_eig:.3e}"
        )));
    }
    let marginal = linalg::partial_trace(&choi, &[2, 2], &[0])?;
    let half_identity = ComplexMatrix::identity(2).scale_re(0.5);
    if marginal.max_abs_diff(&half_identity) > 1e-10 {
        return Err(Error::Numeric("assembled channel is not trace preserving".into()));
    }

    Ok(TeleportChannel {
        channel_state: rho.clone(),
        correction_frame: (u_a, u_b),
        choi_matrix: choi,
        basis_action,
    })
}

impl TeleportChannel {
    /// Apply Λ to a qubit operator by linearity over the cached basis action.
    pub fn apply(&self, input: &ComplexMatrix) -> Result<ComplexMatrix> {
        if input.rows() != 2 || input.cols() != 2 {
            return Err(Error::Shape(format!(
                "channel input must be 2x2, got {}x{}",
                input.rows(),
                input.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                out = out.add(&self.basis_action[2 * i + j].scale(input.at(i, j)))?;
            }
        }
        Ok(out)
    }
}

/// Exact average fidelity of the scheme: (2·F_e + 1)/3 with the
/// entanglement fidelity F_e = ⟨φ⁺|(id ⊗ Λ)(|φ⁺⟩⟨φ⁺|)|φ⁺⟩.
pub fn exact_average_fidelity(ch: &TeleportChannel) -> f64 {
    let phi = bell_state(BellKind::PhiPlus);
    let f_e = linalg::expectation(&ch.choi_matrix, phi.amplitudes())
        .expect("4x4 Choi matches the Bell vector")
        .re;
    (2.0 * f_e + 1.0) / 3.0
}

/// Monte-Carlo average of ⟨ξ|Λ(|ξ⟩⟨ξ|)|ξ⟩ over Haar-random single-qubit
/// inputs; deterministic per seed.
pub fn mc_average_fidelity(ch: &TeleportChannel, samples: usize, seed: u64) -> Result<TeleportEstimate> {
    if samples < 100 {
        return Err(Error::Argument(format!("need at least 100 samples, got {samples}")));
    }
    let mut rng = SplitMix64::new(seed);

    // Λ(|i⟩⟨j|) flattened once; the sample loop is then allocation-free.
    let mut action = [[ZERO; 4]; 4];
    for (block, source) in action.iter_mut().zip(&ch.basis_action) {
        for (k, slot) in block.iter_mut().enumerate() {
            *slot = source.at(k / 2, k % 2);
        }
    }

    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for count in 1..=samples {
        let xi = sample_haar_amplitudes(&mut rng, 2);
        let (a, b) = (xi[0], xi[1]);

        // out = Σ_ij ξ_i ξ_j* Λ(|i⟩⟨j|)
        let coeff = [a * a.conj(), a * b.conj(), b * a.conj(), b * b.conj()];
        let mut out = [ZERO; 4];
        for (c, block) in coeff.iter().zip(&action) {
            for k in 0..4 {
                out[k] += c * block[k];
            }
        }
        // fidelity = ⟨ξ|out|ξ⟩
        let fid = (a.conj() * (out[0] * a + out[1] * b) + b.conj() * (out[2] * a + out[3] * b)).re;

        // Welford update; extends to a streaming merge over sample ranges.
        let delta = fid - mean;
        mean += delta / count as f64;
        m2 += delta * (fid - mean);
    }

    let variance = if samples > 1 { m2 / (samples as f64 - 1.0) } else { 0.0 };
    let mc_std_err = libm::sqrt(variance.max(0.0) / samples as f64);

    Ok(TeleportEstimate {
        mc_mean: mean,
        mc_std_err,
        exact_value: exact_average_fidelity(ch),
        samples,
        seed,
    })
}
