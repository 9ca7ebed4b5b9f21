//! Constructors and validators for the states the diagnostics run on:
//! Bell and tilde-Bell states, the two-parameter 2⊗d class and its σ_γ
//! specialization, Schmidt decompositions, and seeded Haar/Gram random
//! states.
//!
//! Subsystem dimensions ride along with every state. The 4-dimensional basis
//! vectors |0..3⟩ are identified with the two-qubit basis |00⟩,|01⟩,|10⟩,|11⟩
//! in row-major order, so re-tagging dims `[2,2,2]` ↔ `[2,4]` never moves data.

use alloc::{format, vec, vec::Vec};
use num_complex::Complex64;

use crate::linalg::{self, ComplexMatrix};
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// Largest total Hilbert-space dimension the random constructors accept.
pub const MAX_TOTAL_DIM: usize = 32;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

const NORM_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = -1e-10;

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Argument(format!("subsystem dims must be positive, got {dims:?}")));
    }
    Ok(dims.iter().product())
}

/// Normalized pure state tagged with subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vec<Complex64>,
    dims: Vec<usize>,
}

impl PureState {
    /// Validates length, finiteness and unit norm (within 1e-12).
    pub fn new(amps: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&dims)?;
        if amps.len() != total {
            return Err(Error::Shape(format!(
                "amplitude count {} does not match dims {dims:?}",
                amps.len()
            )));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("amplitudes must be finite".into()));
        }
        let norm = libm::sqrt(amps.iter().map(|z| z.norm_sqr()).sum());
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Argument(format!(
                "state norm {norm} deviates from 1 beyond {NORM_TOL:.0e}"
            )));
        }
        Ok(Self { amps, dims })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    /// Re-tag the subsystem structure without touching amplitudes.
    ///
    /// Valid whenever the products agree, e.g. `[2,2,2]` ↔ `[2,4]`; the flat
    /// index order is the same on both sides, so this is a view change,
    /// never a data shuffle.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&dims)?;
        if total != self.amps.len() {
            return Err(Error::Shape(format!(
                "cannot view a {}-dimensional state as dims {dims:?}",
                self.amps.len()
            )));
        }
        Ok(Self { amps: self.amps.clone(), dims })
    }

    /// View as a bipartite state: first subsystem vs. everything else.
    pub fn as_bipartite(&self) -> Result<Self> {
        if self.dims.len() < 2 {
            return Err(Error::Argument("state has no bipartition".into()));
        }
        let rest: usize = self.dims[1..].iter().product();
        self.with_dims(vec![self.dims[0], rest])
    }

    /// Density operator |ψ⟩⟨ψ|.
    pub fn density(&self) -> DensityOperator {
        let matrix = linalg::outer(&self.amps, &self.amps);
        DensityOperator::new(matrix, self.dims.clone())
            .expect("rank-1 projector of a unit vector satisfies the density invariants")
    }

    /// Reduced density operator on the kept subsystems.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityOperator> {
        self.density().partial_trace(keep)
    }

    /// Reduced 2×2 state of the first factor of a [2,d] split.
    pub(crate) fn qubit_marginal(&self) -> Result<ComplexMatrix> {
        if self.dims.first() != Some(&2) {
            return Err(Error::Argument(format!(
                "first factor must be 2-dimensional, got dims {:?}",
                self.dims
            )));
        }
        let d = self.amps.len() / 2;
        let mut rho = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = ZERO;
                for k in 0..d {
                    acc += self.amps[i * d + k] * self.amps[j * d + k].conj();
                }
                rho.set(i, j, acc);
            }
        }
        Ok(rho)
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator tagged with
/// subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityOperator {
    /// Validates Hermiticity (1e-10), unit trace (1e-10), positivity
    /// (min eigenvalue ≥ -1e-10) and the dims product.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&dims)?;
        if !matrix.is_square() || matrix.rows() != total {
            return Err(Error::Shape(format!(
                "matrix side {} does not match dims {dims:?}",
                matrix.rows()
            )));
        }
        let defect = matrix.hermitian_defect();
        if defect > linalg::HERMITICITY_TOL {
            return Err(Error::Argument(format!(
                "density operator is not Hermitian: asymmetry {defect:.3e}"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Argument(format!("density operator trace {tr} deviates from 1")));
        }
        let eig = linalg::hermitian_eig(&matrix)?;
        let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min < PSD_TOL {
            return Err(Error::Argument(format!(
                "density operator has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { matrix, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Re-tag the subsystem structure; same index order, no data movement.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&dims)?;
        if total != self.matrix.rows() {
            return Err(Error::Shape(format!(
                "cannot view a side-{} operator as dims {dims:?}",
                self.matrix.rows()
            )));
        }
        Ok(Self { matrix: self.matrix.clone(), dims })
    }

    /// Reduced operator on the kept subsystems (strictly increasing indices).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityOperator> {
        let reduced = linalg::partial_trace(&self.matrix, &self.dims, keep)?;
        let dims: Vec<usize> = keep.iter().map(|&k| self.dims[k]).collect();
        DensityOperator::new(reduced, dims)
    }
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];

    /// (index of the first basis ket, index of the second, relative sign)
    fn components(self) -> (usize, usize, f64) {
        match self {
            BellKind::PhiPlus => (0, 3, 1.0),
            BellKind::PhiMinus => (0, 3, -1.0),
            BellKind::PsiPlus => (1, 2, 1.0),
            BellKind::PsiMinus => (1, 2, -1.0),
        }
    }
}

/// Two-qubit Bell state (|00⟩±|11⟩)/√2 or (|01⟩±|10⟩)/√2.
pub fn bell_state(kind: BellKind) -> PureState {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let (a, b, sign) = kind.components();
    let mut amps = vec![ZERO; 4];
    amps[a] = Complex64::new(s, 0.0);
    amps[b] = Complex64::new(sign * s, 0.0);
    PureState::new(amps, vec![2, 2]).expect("Bell amplitudes are normalized")
}

/// Three-qubit embedding of a Bell state: (|000⟩±|101⟩)/√2 for φ̃± and
/// (|001⟩±|100⟩)/√2 for ψ̃±, tagged `[2,2,2]`.
///
/// Viewed as `[2,4]` via [`PureState::with_dims`], these are the maximally
/// entangled vectors (|0⟩|0⟩±|1⟩|1⟩)/√2 and (|0⟩|1⟩±|1⟩|0⟩)/√2 between the
/// first qubit and the rank-2 subspace span{|0⟩,|1⟩} of the 4-dimensional
/// factor.
pub fn tilde_bell_state(kind: BellKind) -> PureState {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let (a, b, sign) = match kind {
        BellKind::PhiPlus => (0b000, 0b101, 1.0),
        BellKind::PhiMinus => (0b000, 0b101, -1.0),
        BellKind::PsiPlus => (0b001, 0b100, 1.0),
        BellKind::PsiMinus => (0b001, 0b100, -1.0),
    };
    let mut amps = vec![ZERO; 8];
    amps[a] = Complex64::new(s, 0.0);
    amps[b] = Complex64::new(sign * s, 0.0);
    PureState::new(amps, vec![2, 2, 2]).expect("tilde-Bell amplitudes are normalized")
}

/// Parameters of the two-parameter 2⊗d class.
///
/// `beta` is derived from the trace normalization
/// 2(d−2)·alpha + 3·beta + gamma = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoParamClassParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub d: usize,
}

impl TwoParamClassParams {
    pub fn new(alpha: f64, gamma: f64, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Argument(format!("second factor must have d >= 2, got {d}")));
        }
        let beta = (1.0 - 2.0 * (d as f64 - 2.0) * alpha - gamma) / 3.0;
        let in_range = |x: f64| (-1e-12..=1.0 + 1e-12).contains(&x);
        if !in_range(alpha) || !in_range(beta) || !in_range(gamma) {
            return Err(Error::Argument(format!(
                "weights out of range: alpha={alpha}, beta={beta}, gamma={gamma}"
            )));
        }
        Ok(Self { alpha: alpha.clamp(0.0, 1.0), beta: beta.clamp(0.0, 1.0), gamma: gamma.clamp(0.0, 1.0), d })
    }
}

/// Parameters of the one-parameter σ_γ family (the α=β slice of the
/// two-parameter class at d=4, with 7·alpha + gamma = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaGammaParams {
    pub gamma: f64,
    pub alpha: f64,
}

impl SigmaGammaParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::Argument(format!("gamma must lie in [0,1], got {gamma}")));
        }
        Ok(Self { gamma, alpha: (1.0 - gamma) / 7.0 })
    }
}

fn basis_vector(dim: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; dim];
    v[index] = Complex64::new(1.0, 0.0);
    v
}

/// Tilde-Bell vectors in 2⊗d: (|0⟩|0⟩±|1⟩|1⟩)/√2 and (|0⟩|1⟩±|1⟩|0⟩)/√2.
fn tilde_bell_vec_2xd(kind: BellKind, d: usize) -> Vec<Complex64> {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let (a, b, sign) = match kind {
        BellKind::PhiPlus => (0, d + 1, 1.0),
        BellKind::PhiMinus => (0, d + 1, -1.0),
        BellKind::PsiPlus => (1, d, 1.0),
        BellKind::PsiMinus => (1, d, -1.0),
    };
    let mut amps = vec![ZERO; 2 * d];
    amps[a] = Complex64::new(s, 0.0);
    amps[b] = Complex64::new(sign * s, 0.0);
    amps
}

/// The two-parameter class in 2⊗d: weight `alpha` on each basis projector
/// |ij⟩⟨ij| with j ≥ 2, weight `beta` on the φ̃⁺, φ̃⁻, ψ̃⁺ projectors and
/// weight `gamma` on ψ̃⁻.
pub fn two_param_state(p: &TwoParamClassParams) -> DensityOperator {
    let d = p.d;
    let side = 2 * d;
    let mut m = ComplexMatrix::zeros(side, side);

    let mut add_projector = |v: &[Complex64], w: f64| {
        if w == 0.0 {
            return;
        }
        for (i, &vi) in v.iter().enumerate() {
            if vi == ZERO {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj == ZERO {
                    continue;
                }
                let cur = m.at(i, j);
                m.set(i, j, cur + vi * vj.conj() * w);
            }
        }
    };

    for i in 0..2 {
        for j in 2..d {
            add_projector(&basis_vector(side, i * d + j), p.alpha);
        }
    }
    for kind in [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus] {
        add_projector(&tilde_bell_vec_2xd(kind, d), p.beta);
    }
    add_projector(&tilde_bell_vec_2xd(BellKind::PsiMinus, d), p.gamma);

    DensityOperator::new(m, vec![2, d]).expect("projector mixture with normalized weights is a density operator")
}

/// The σ_γ three-qubit family, tagged `[2,2,2]` (viewable as `[2,4]`): weight
/// α=(1−γ)/7 on each |i1j⟩⟨i1j| and on the φ̃⁺, φ̃⁻, ψ̃⁺ projectors, weight
/// γ on ψ̃⁻.
pub fn sigma_gamma_state(g: &SigmaGammaParams) -> DensityOperator {
    let mut m = ComplexMatrix::zeros(8, 8);

    let mut add_projector = |v: &[Complex64], w: f64| {
        if w == 0.0 {
            return;
        }
        for (i, &vi) in v.iter().enumerate() {
            if vi == ZERO {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj == ZERO {
                    continue;
                }
                let cur = m.at(i, j);
                m.set(i, j, cur + vi * vj.conj() * w);
            }
        }
    };

    // |i1j⟩ for i,j in {0,1}: flat indices 4i + 2 + j.
    for i in 0..2 {
        for j in 0..2 {
            add_projector(&basis_vector(8, 4 * i + 2 + j), g.alpha);
        }
    }
    for kind in [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus] {
        add_projector(tilde_bell_state(kind).amplitudes(), g.alpha);
    }
    add_projector(tilde_bell_state(BellKind::PsiMinus).amplitudes(), g.gamma);

    DensityOperator::new(m, vec![2, 2, 2]).expect("sigma_gamma weights are normalized")
}

/// Which pair of parties of σ_γ to reduce to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaPair {
    /// Parties 1 and 3: the Bell-diagonal reduction with weights
    /// (2α, 2α, 2α, α+γ) on (φ⁺, φ⁻, ψ⁺, ψ⁻).
    OneThree,
    /// Parties 1 and 2: a separable diagonal state.
    OneTwo,
}

/// Two-qubit reduction of σ_γ.
///
/// The (1,3) pair is built directly in Bell-diagonal form; the (1,2) pair is
/// the numeric partial trace over party 3. Both agree with the partial trace
/// of [`sigma_gamma_state`] entrywise.
pub fn sigma_gamma_pair(g: &SigmaGammaParams, pair: SigmaPair) -> DensityOperator {
    match pair {
        SigmaPair::OneThree => {
            let mut m = ComplexMatrix::zeros(4, 4);
            let weights = [
                (BellKind::PhiPlus, 2.0 * g.alpha),
                (BellKind::PhiMinus, 2.0 * g.alpha),
                (BellKind::PsiPlus, 2.0 * g.alpha),
                (BellKind::PsiMinus, g.alpha + g.gamma),
            ];
            for (kind, w) in weights {
                let v = bell_state(kind);
                let proj = linalg::outer(v.amplitudes(), v.amplitudes());
                m = m.add(&proj.scale_re(w)).expect("fixed 4x4 shapes");
            }
            DensityOperator::new(m, vec![2, 2]).expect("Bell-diagonal mixture is a density operator")
        }
        SigmaPair::OneTwo => sigma_gamma_state(g)
            .partial_trace(&[0, 1])
            .expect("tracing party 3 of a valid three-qubit state"),
    }
}

/// Schmidt decomposition of a 2⊗d pure state:
/// |φ⟩ = √α_s |a₀⟩|b₀⟩ + √β_s |a₁⟩|b₁⟩ with α_s + β_s = 1.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// (√α_s, √β_s), sorted descending.
    pub coefficients: [f64; 2],
    /// Orthonormal pair in the 2-dimensional factor.
    pub left_vectors: [Vec<Complex64>; 2],
    /// Orthonormal pair in the d-dimensional factor.
    pub right_vectors: [Vec<Complex64>; 2],
}

impl SchmidtDecomposition {
    /// Σ_j c_j |a_j⟩|b_j⟩ as a flat amplitude vector.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let d = self.right_vectors[0].len();
        let mut amps = vec![ZERO; 2 * d];
        for j in 0..2 {
            let c = Complex64::new(self.coefficients[j], 0.0);
            for (i, &a) in self.left_vectors[j].iter().enumerate() {
                for (k, &b) in self.right_vectors[j].iter().enumerate() {
                    amps[i * d + k] += c * a * b;
                }
            }
        }
        amps
    }
}

/// Schmidt decomposition across the `[2,d]` bipartition of `phi`.
///
/// Computed from the eigendecomposition of the 2×2 reduced state; the right
/// vectors are recovered by projecting `phi` onto the left eigenvectors, so
/// the reconstruction matches `phi` including the global phase. For a zero
/// Schmidt coefficient the matching right vector is completed
/// deterministically from the standard basis.
pub fn schmidt(phi: &PureState) -> Result<SchmidtDecomposition> {
    if phi.dims().len() != 2 || phi.dims()[0] != 2 {
        return Err(Error::Shape(format!(
            "Schmidt split needs dims [2, d], got {:?} (regroup with as_bipartite first)",
            phi.dims()
        )));
    }
    let d = phi.dims()[1];
    let rho1 = phi.qubit_marginal()?;
    let eig = linalg::hermitian_eig(&rho1)?;

    let mut coefficients = [0.0f64; 2];
    let mut left: [Vec<Complex64>; 2] = [vec![ZERO; 2], vec![ZERO; 2]];
    let mut right: [Vec<Complex64>; 2] = [vec![ZERO; d], vec![ZERO; d]];

    for j in 0..2 {
        let lam = eig.eigenvalues[j].max(0.0);
        coefficients[j] = libm::sqrt(lam);
        left[j] = eig.eigenvector(j);
    }

    let amps = phi.amplitudes();
    for j in 0..2 {
        if coefficients[j] > 1e-9 {
            // b_j = (⟨a_j| ⊗ I)|φ⟩ / c_j
            for k in 0..d {
                let mut acc = ZERO;
                for i in 0..2 {
                    acc += left[j][i].conj() * amps[i * d + k];
                }
                right[j][k] = acc / Complex64::new(coefficients[j], 0.0);
            }
        } else {
            right[j] = orthonormal_completion(&right[1 - j], d);
        }
    }

    Ok(SchmidtDecomposition { coefficients, left_vectors: left, right_vectors: right })
}

/// First standard-basis vector with a large component orthogonal to `v`,
/// Gram-Schmidt orthonormalized against it.
fn orthonormal_completion(v: &[Complex64], d: usize) -> Vec<Complex64> {
    for k in 0..d {
        let mut cand = basis_vector(d, k);
        let overlap = linalg::inner(v, &cand);
        for (c, &vi) in cand.iter_mut().zip(v) {
            *c -= overlap * vi;
        }
        let norm_sq: f64 = cand.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq > 0.5 {
            let inv = Complex64::new(1.0 / libm::sqrt(norm_sq), 0.0);
            for c in cand.iter_mut() {
                *c *= inv;
            }
            return cand;
        }
    }
    unreachable!("a unit vector cannot overlap every basis vector by more than 1/sqrt(2)")
}

/// Block-diagonal embedding of a 2×2 operator into 4 dimensions:
/// Ã acts as A on span{|0⟩,|1⟩} and as the identity on span{|2⟩,|3⟩}.
pub fn embed_qubit_op(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Argument(format!("expected a 2x2 operator, got {}x{}", a.rows(), a.cols())));
    }
    let mut out = ComplexMatrix::identity(4);
    for i in 0..2 {
        for j in 0..2 {
            out.set(i, j, a.at(i, j));
        }
    }
    Ok(out)
}

pub(crate) fn sample_haar_amplitudes(rng: &mut SplitMix64, dim: usize) -> Vec<Complex64> {
    loop {
        let raw: Vec<Complex64> = (0..dim).map(|_| rng.next_complex_gaussian()).collect();
        let norm = libm::sqrt(raw.iter().map(|z| z.norm_sqr()).sum());
        // Vanishing norm has probability zero; guard against it anyway.
        if norm > 1e-12 {
            let inv = Complex64::new(1.0 / norm, 0.0);
            return raw.into_iter().map(|z| z * inv).collect();
        }
    }
}

/// Haar-random pure state: a vector of independent standard complex
/// Gaussians, normalized. Deterministic for a fixed seed.
pub fn haar_pure(dims: &[usize], seed: u64) -> Result<PureState> {
    let total = check_dims(dims)?;
    if total > MAX_TOTAL_DIM {
        return Err(Error::SizeLimit(format!(
            "total dimension {total} exceeds {MAX_TOTAL_DIM}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let amps = sample_haar_amplitudes(&mut rng, total);
    PureState::new(amps, dims.to_vec())
}

/// Random density operator G·G†/tr(G·G†) for a square complex Gaussian G.
/// Deterministic for a fixed seed.
pub fn random_density(dims: &[usize], seed: u64) -> Result<DensityOperator> {
    let total = check_dims(dims)?;
    if total > MAX_TOTAL_DIM {
        return Err(Error::SizeLimit(format!(
            "total dimension {total} exceeds {MAX_TOTAL_DIM}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let g = ComplexMatrix::from_fn(total, total, |_, _| rng.next_complex_gaussian());
    let gram = g.mul(&g.adjoint()).expect("square factors");
    let tr = gram.trace().re;
    let m = gram.scale_re(1.0 / tr);
    DensityOperator::new(m, dims.to_vec())
}

/// Haar-random unitary via Gram-Schmidt on a complex Gaussian matrix.
/// Deterministic for a fixed seed.
pub fn haar_unitary(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = SplitMix64::new(seed);
    loop {
        let g = ComplexMatrix::from_fn(n, n, |_, _| rng.next_complex_gaussian());
        if let Some(q) = gram_schmidt_columns(&g) {
            return q;
        }
    }
}

/// Orthonormalize columns; None if a column degenerates (probability zero
/// for Gaussian input).
fn gram_schmidt_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = m.rows();
    let mut cols: Vec<Vec<Complex64>> = (0..m.cols()).map(|j| (0..n).map(|i| m.at(i, j)).collect()).collect();
    for j in 0..cols.len() {
        for i in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let overlap = linalg::inner(&done[i], &rest[0]);
            for (z, &u) in rest[0].iter_mut().zip(&done[i]) {
                *z -= overlap * u;
            }
        }
        let norm = libm::sqrt(cols[j].iter().map(|z| z.norm_sqr()).sum());
        if norm < 1e-10 {
            return None;
        }
        let inv = Complex64::new(1.0 / norm, 0.0);
        for z in cols[j].iter_mut() {
            *z *= inv;
        }
    }
    let mut out = ComplexMatrix::zeros(n, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out.set(i, j, z);
        }
    }
    Some(out)
}
