//! Bipartite pure states, Schmidt decomposition, purification, the
//! coefficient-deviation purity measure Q, and entropies.
//!
//! The purity measure is built from Schmidt *amplitudes*: after padding the
//! coefficient list with zeros to a chosen dimension N, the deviations
//! d_j = c_j - 1/sqrt(N) give Q = sqrt(sum d_j^2). Q is 0 exactly when the
//! reduced state is maximally mixed and sqrt(2 - 2/sqrt(N)) when the state
//! is a product. It is not the spectral purity tr[rho^2].

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::tensor::{
    complete_orthonormal_basis, herm_eig, inner, outer, partial_trace, vec_norm, BipartiteDims,
    ComplexMatrix, Subsystem, C64,
};
use crate::{tol, Error, Result};

/// State vector in H_alpha tensor H_beta, unit 2-norm, alpha-major indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitePureState {
    amplitudes: Vec<C64>,
    dims: BipartiteDims,
}

impl BipartitePureState {
    pub fn new(amplitudes: Vec<C64>, dims: BipartiteDims) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::LengthMismatch {
                expected: dims.total(),
                found: amplitudes.len(),
            });
        }
        let norm = vec_norm(&amplitudes);
        if (norm - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, dims })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    /// The N x M matrix psi_ij with |psi> = sum psi_ij |i>|j>.
    pub fn amplitude_matrix(&self) -> ComplexMatrix {
        let (n, m) = (self.dims.n_alpha, self.dims.n_beta);
        ComplexMatrix::from_fn(n, m, |i, j| self.amplitudes[i * m + j])
    }

    /// Projector |psi><psi| as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::new_unchecked(outer(&self.amplitudes, &self.amplitudes))
    }

    /// Zero-pads the beta factor to a larger dimension.
    pub fn embed_beta(&self, n_beta: usize) -> Result<Self> {
        let (n, m) = (self.dims.n_alpha, self.dims.n_beta);
        if n_beta < m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: n_beta,
            });
        }
        let mut amplitudes = vec![C64::ZERO; n * n_beta];
        for i in 0..n {
            for j in 0..m {
                amplitudes[i * n_beta + j] = self.amplitudes[i * m + j];
            }
        }
        Ok(Self {
            amplitudes,
            dims: BipartiteDims::new(n, n_beta)?,
        })
    }
}

/// Hermitian, PSD, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dim: usize,
}

impl DensityMatrix {
    /// Validates Hermiticity, positivity (eigenvalues >= -1e-12), and unit
    /// trace, then stores the symmetrized matrix.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let dev = matrix.hermiticity_deviation();
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let matrix = matrix.hermitized();
        let (values, _) = herm_eig(&matrix)?;
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -tol::PSD_CLIP {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::InvalidTrace { trace });
        }
        let dim = matrix.rows();
        Ok(Self { matrix, dim })
    }

    /// For outputs that are Hermitian PSD by construction (pure-state
    /// projectors, trace-preserving channel outputs). Symmetrizes but skips
    /// the spectral check.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Self {
        let dim = matrix.rows();
        Self {
            matrix: matrix.hermitized(),
            dim,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Convex combination sum_m r_m rho_m.
    pub fn mixture(weights: &[f64], components: &[DensityMatrix]) -> Result<Self> {
        if weights.len() != components.len() {
            return Err(Error::LengthMismatch {
                expected: weights.len(),
                found: components.len(),
            });
        }
        if weights.is_empty() {
            return Err(Error::InvalidProbabilities("empty weight vector".into()));
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidProbabilities("negative weight".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol::CHANNEL_FLAG {
            return Err(Error::InvalidProbabilities(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        let dim = components[0].dim;
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, c) in weights.iter().zip(components) {
            if c.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim,
                });
            }
            acc = &acc + &c.matrix.scaled_re(*w);
        }
        Ok(Self::new_unchecked(acc))
    }
}

/// I/n, the state of complete ignorance.
pub fn maximally_mixed(n: usize) -> DensityMatrix {
    DensityMatrix::new_unchecked(ComplexMatrix::diag(&vec![1.0 / n as f64; n]))
}

/// Schmidt data of a bipartite pure state: descending nonnegative
/// coefficients, explicit phases, and full orthonormal bases on both sides
/// (basis matrices are square; coefficients address their leading columns).
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coeffs: Vec<f64>,
    pub phases: Vec<f64>,
    pub alpha_basis: ComplexMatrix,
    pub beta_basis: ComplexMatrix,
    pub rank: usize,
}

impl SchmidtForm {
    /// Validates coefficient normalization and ordering, basis orthonormality,
    /// and wraps phases into [0, 2pi).
    pub fn new(
        coeffs: Vec<f64>,
        phases: Vec<f64>,
        alpha_basis: ComplexMatrix,
        beta_basis: ComplexMatrix,
    ) -> Result<Self> {
        if phases.len() != coeffs.len() {
            return Err(Error::LengthMismatch {
                expected: coeffs.len(),
                found: phases.len(),
            });
        }
        if coeffs.len() > alpha_basis.cols() || coeffs.len() > beta_basis.cols() {
            return Err(Error::DimensionMismatch {
                expected: coeffs.len(),
                found: alpha_basis.cols().min(beta_basis.cols()),
            });
        }
        for basis in [&alpha_basis, &beta_basis] {
            if !basis.is_square() {
                return Err(Error::NotSquare {
                    rows: basis.rows(),
                    cols: basis.cols(),
                });
            }
            let dev = basis.unitarity_deviation();
            if dev > tol::UNITARITY {
                return Err(Error::NotUnitary { deviation: dev });
            }
        }
        let mut sum = 0.0;
        for w in coeffs.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidConfig(
                    "Schmidt coefficients must be descending".into(),
                ));
            }
        }
        for &c in &coeffs {
            if c < 0.0 {
                return Err(Error::InvalidConfig(
                    "Schmidt coefficients must be nonnegative".into(),
                ));
            }
            sum += c * c;
        }
        if (sum - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::NotNormalized { norm: sum.sqrt() });
        }
        let tau = std::f64::consts::TAU;
        let phases = phases.iter().map(|p| p.rem_euclid(tau)).collect();
        let rank = coeffs.iter().filter(|&&c| c > tol::RANK_CUTOFF).count();
        Ok(Self {
            coeffs,
            phases,
            alpha_basis,
            beta_basis,
            rank,
        })
    }

    pub fn dims(&self) -> BipartiteDims {
        BipartiteDims {
            n_alpha: self.alpha_basis.rows(),
            n_beta: self.beta_basis.rows(),
        }
    }

    /// sum_j c_j e^{i phi_j} |alpha_j>|beta_j>.
    pub fn reassemble(&self) -> Result<BipartitePureState> {
        let dims = self.dims();
        let (n, m) = (dims.n_alpha, dims.n_beta);
        let mut amplitudes = vec![C64::ZERO; n * m];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let factor = C64::from_polar(c, self.phases[j]);
            for i in 0..n {
                let a = self.alpha_basis[(i, j)];
                if a == C64::ZERO {
                    continue;
                }
                for k in 0..m {
                    amplitudes[i * m + k] += factor * a * self.beta_basis[(k, j)];
                }
            }
        }
        BipartitePureState::new(amplitudes, dims)
    }

    /// Extends the coefficient list with zeros to `n_padded` terms, enlarging
    /// H_beta when it has fewer dimensions than that. Requires
    /// rank <= n_padded <= dim H_alpha.
    pub fn padded(&self, n_padded: usize) -> Result<SchmidtForm> {
        if n_padded < self.rank {
            return Err(Error::PaddingTooSmall {
                rank: self.rank,
                n_padded,
            });
        }
        let n_alpha = self.alpha_basis.rows();
        if n_padded > n_alpha {
            return Err(Error::PaddingTooLarge {
                n_padded,
                dim: n_alpha,
            });
        }
        let mut coeffs: Vec<f64> = self.coeffs.iter().copied().take(n_padded).collect();
        let mut phases: Vec<f64> = self.phases.iter().copied().take(n_padded).collect();
        while coeffs.len() < n_padded {
            coeffs.push(0.0);
            phases.push(0.0);
        }
        // renormalize away the (sub-1e-12) tail that may have been dropped
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        for c in coeffs.iter_mut() {
            *c /= norm;
        }
        let m_beta = self.beta_basis.rows();
        let beta_basis = if m_beta >= n_padded {
            self.beta_basis.clone()
        } else {
            let mut embedded = ComplexMatrix::zeros(n_padded, m_beta);
            for i in 0..m_beta {
                for j in 0..m_beta {
                    embedded[(i, j)] = self.beta_basis[(i, j)];
                }
            }
            complete_orthonormal_basis(&embedded)?
        };
        SchmidtForm::new(coeffs, phases, self.alpha_basis.clone(), beta_basis)
    }

    /// Same bases and phases with all coefficients replaced by 1/sqrt(L).
    pub fn maximally_entangled_form(&self) -> SchmidtForm {
        let l = self.coeffs.len();
        let c = 1.0 / (l as f64).sqrt();
        SchmidtForm {
            coeffs: vec![c; l],
            phases: self.phases.clone(),
            alpha_basis: self.alpha_basis.clone(),
            beta_basis: self.beta_basis.clone(),
            rank: l,
        }
    }

    /// All coefficients within `tolerance` of 1/sqrt(L)?
    pub fn is_maximally_entangled(&self, tolerance: f64) -> bool {
        let c = 1.0 / (self.coeffs.len() as f64).sqrt();
        self.coeffs.iter().all(|&x| (x - c).abs() <= tolerance)
    }
}

/// SVD-based Schmidt decomposition. Coefficients come out descending with
/// the canonical gauge phi_j = 0; the SVD phases are folded into the beta
/// basis columns. Rank counts coefficients above 1e-12.
pub fn schmidt_decompose(psi: &BipartitePureState) -> SchmidtForm {
    let dims = psi.dims();
    let (n, m) = (dims.n_alpha, dims.n_beta);
    let svd = psi.amplitude_matrix().to_na().svd(true, true);
    let u = svd.u.expect("svd requested u");
    let v_t = svd.v_t.expect("svd requested v_t");
    let k = svd.singular_values.len();

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    let coeffs: Vec<f64> = order.iter().map(|&j| svd.singular_values[j]).collect();

    // psi_ij = sum_k sigma_k U_ik (V^H)_kj, so with b_k[j] := (V^H)_kj taken
    // as a column, |psi> = sum sigma_k |u_k>|b_k> and the b_k are orthonormal.
    let alpha_thin = ComplexMatrix::from_fn(n, k, |i, j| u[(i, order[j])]);
    let beta_thin = ComplexMatrix::from_fn(m, k, |i, j| v_t[(order[j], i)]);
    let alpha_basis =
        complete_orthonormal_basis(&alpha_thin).expect("svd returns orthonormal columns");
    let beta_basis =
        complete_orthonormal_basis(&beta_thin).expect("svd returns orthonormal columns");

    SchmidtForm::new(coeffs, vec![0.0; k], alpha_basis, beta_basis)
        .expect("decomposition of a normalized state is a valid Schmidt form")
}

/// Purification |Omega> = sum sqrt(lambda_j) |e_j>|j> of rho over an ancilla
/// of equal dimension; the partial trace over beta recovers rho.
pub fn purify(rho: &DensityMatrix) -> BipartitePureState {
    let n = rho.dim();
    let (values, vectors) = herm_eig(rho.matrix()).expect("density matrices are Hermitian");
    let mut amplitudes = vec![C64::ZERO; n * n];
    for (j, &lambda) in values.iter().enumerate() {
        let c = lambda.max(0.0).sqrt();
        for i in 0..n {
            amplitudes[i * n + j] = vectors[(i, j)] * c;
        }
    }
    let norm = vec_norm(&amplitudes);
    for a in amplitudes.iter_mut() {
        *a /= norm;
    }
    BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: n, n_beta: n })
        .expect("purification is normalized")
}

/// Q and the deviation vector d_j = c_j - 1/sqrt(N) after zero-padding the
/// coefficients to N = `n_padded` terms.
#[derive(Debug, Clone)]
pub struct PurityMeasure {
    pub q: f64,
    pub n_padded: usize,
    pub d: Vec<f64>,
}

pub fn q_purity(sf: &SchmidtForm, n_padded: usize) -> Result<PurityMeasure> {
    if n_padded < sf.rank {
        return Err(Error::PaddingTooSmall {
            rank: sf.rank,
            n_padded,
        });
    }
    let base = 1.0 / (n_padded as f64).sqrt();
    let mut d = Vec::with_capacity(n_padded);
    for j in 0..n_padded {
        let c = sf.coeffs.get(j).copied().unwrap_or(0.0);
        d.push(c - base);
    }
    let q = d.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(PurityMeasure { q, n_padded, d })
}

/// The split of |Omega> into a maximally entangled part and an orthogonal
/// remainder: |Omega> = |Omega_1>-part + Q |Omega_2>-part.
#[derive(Debug, Clone)]
pub struct OmegaSplit {
    pub omega1: BipartitePureState,
    /// Absent when Q <= 1e-12 (then |Omega> = |Omega_1>).
    pub omega2: Option<BipartitePureState>,
    pub q: f64,
    /// Schmidt data of omega1 over the padded dims: all coefficients
    /// 1/sqrt(n_padded), same bases and phases. This is what the counterpart
    /// construction consumes.
    pub omega1_form: SchmidtForm,
}

pub fn omega_split(sf: &SchmidtForm, n_padded: usize) -> Result<OmegaSplit> {
    let pf = sf.padded(n_padded)?;
    let pm = q_purity(&pf, n_padded)?;
    let omega1_form = pf.maximally_entangled_form();
    let omega1 = omega1_form.reassemble()?;
    let omega2 = if pm.q <= tol::ABSENT_COMPONENT {
        None
    } else {
        let dims = pf.dims();
        let (n, m) = (dims.n_alpha, dims.n_beta);
        let mut amplitudes = vec![C64::ZERO; n * m];
        for (j, &dj) in pm.d.iter().enumerate() {
            let factor = C64::from_polar(1.0, pf.phases[j]) * (dj / pm.q);
            for i in 0..n {
                let a = pf.alpha_basis[(i, j)];
                if a == C64::ZERO {
                    continue;
                }
                for k in 0..m {
                    amplitudes[i * m + k] += factor * a * pf.beta_basis[(k, j)];
                }
            }
        }
        Some(BipartitePureState::new(amplitudes, dims)?)
    };
    Ok(OmegaSplit {
        omega1,
        omega2,
        q: pm.q,
        omega1_form,
    })
}

/// S(rho) = -tr[rho ln rho] in nats, with 0 ln 0 = 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let (values, _) = herm_eig(rho.matrix()).expect("density matrices are Hermitian");
    -values
        .iter()
        .map(|&v| {
            let p = v.clamp(0.0, 1.0);
            if p > 0.0 {
                p * p.ln()
            } else {
                0.0
            }
        })
        .sum::<f64>()
}

/// Shannon entropy of the outcome distribution p_i = <i|rho|i> over the
/// columns of `basis`.
pub fn shannon_entropy_observable(rho: &DensityMatrix, basis: &ComplexMatrix) -> Result<f64> {
    if !basis.is_square() || basis.rows() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: basis.rows(),
        });
    }
    let dev = basis.unitarity_deviation();
    if dev > tol::UNITARITY {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let mut h = 0.0;
    for i in 0..rho.dim() {
        let b = basis.col(i);
        let p = inner(&b, &rho.matrix().mul_vec(&b)).re.clamp(0.0, 1.0);
        if p > 0.0 {
            h -= p * p.ln();
        }
    }
    Ok(h)
}

/// (1/sqrt(n)) sum_j e^{i phi_j} |j>|j> in the computational bases.
pub fn maximally_entangled(n: usize, phases: &[f64]) -> Result<BipartitePureState> {
    if phases.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: phases.len(),
        });
    }
    let c = 1.0 / (n as f64).sqrt();
    let mut amplitudes = vec![C64::ZERO; n * n];
    for (j, &p) in phases.iter().enumerate() {
        amplitudes[j * n + j] = C64::from_polar(c, p);
    }
    BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: n, n_beta: n })
}

/// Haar-uniform pure state: independent standard complex Gaussian
/// amplitudes, normalized.
pub fn random_pure_bipartite<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> BipartitePureState {
    let mut amplitudes: Vec<C64> = (0..n * m)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = vec_norm(&amplitudes);
    for a in amplitudes.iter_mut() {
        *a /= norm;
    }
    BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: n, n_beta: m })
        .expect("normalized by construction")
}

/// Random mixed state: partial trace of a random pure state on doubled dims.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DensityMatrix {
    let psi = random_pure_bipartite(rng, n, n);
    let reduced = partial_trace(
        psi.density().matrix(),
        psi.dims(),
        Subsystem::Alpha,
    )
    .expect("dims match by construction");
    DensityMatrix::new(reduced).expect("partial trace of a pure state is a density matrix")
}

/// Random Schmidt form: flat-Dirichlet probabilities (descending amplitude
/// order), uniform phases, Haar bases on both sides.
pub fn random_schmidt_form<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> SchmidtForm {
    let l = n.min(m);
    let mut p: Vec<f64> = (0..l).map(|_| rng.sample(Exp1)).collect();
    let sum: f64 = p.iter().sum();
    for x in p.iter_mut() {
        *x /= sum;
    }
    let mut coeffs: Vec<f64> = p.iter().map(|x| x.sqrt()).collect();
    coeffs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let phases: Vec<f64> = (0..l)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    let alpha_basis = crate::channels::haar_unitary(rng, n);
    let beta_basis = crate::channels::haar_unitary(rng, m);
    SchmidtForm::new(coeffs, phases, alpha_basis, beta_basis)
        .expect("sampled coefficients are normalized and descending")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    const TOLERANCE: f64 = 1e-10;
    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn bell_nu() -> BipartitePureState {
        // (|01> + |10>)/sqrt(2)
        let amplitudes = vec![
            C64::ZERO,
            C64::new(SQRT_HALF, 0.0),
            C64::new(SQRT_HALF, 0.0),
            C64::ZERO,
        ];
        BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: 2, n_beta: 2 }).unwrap()
    }

    #[test]
    fn schmidt_of_bell_state_is_flat() {
        let sf = schmidt_decompose(&bell_nu());
        assert!((sf.coeffs[0] - SQRT_HALF).abs() <= TOLERANCE);
        assert!((sf.coeffs[1] - SQRT_HALF).abs() <= TOLERANCE);
        assert_eq!(sf.rank, 2);
        assert!(sf.is_maximally_entangled(1e-10));
    }

    #[test]
    fn schmidt_of_product_state_has_rank_one() {
        let mut amplitudes = vec![C64::ZERO; 4];
        amplitudes[0] = C64::ONE;
        let psi =
            BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: 2, n_beta: 2 }).unwrap();
        let sf = schmidt_decompose(&psi);
        assert!((sf.coeffs[0] - 1.0).abs() <= TOLERANCE);
        assert_eq!(sf.rank, 1);
        assert!(sf.coeffs[1] <= tol::RANK_CUTOFF);
    }

    #[test]
    fn schmidt_reassembles_random_states() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for (n, m) in [(3, 3), (2, 3), (4, 2), (5, 3)] {
            let psi = random_pure_bipartite(&mut rng, n, m);
            let sf = schmidt_decompose(&psi);
            let back = sf.reassemble().unwrap();
            let diff: f64 = psi
                .amplitudes()
                .iter()
                .zip(back.amplitudes())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(diff <= 1e-9, "reassembly error {diff} at dims {n}x{m}");
            let sum: f64 = sf.coeffs.iter().map(|c| c * c).sum();
            assert!((sum - 1.0).abs() <= TOLERANCE);
        }
    }

    #[test]
    fn purify_maximally_mixed_gives_flat_coefficients() {
        let omega = purify(&maximally_mixed(2));
        let sf = schmidt_decompose(&omega);
        assert!((sf.coeffs[0] - SQRT_HALF).abs() <= TOLERANCE);
        assert!((sf.coeffs[1] - SQRT_HALF).abs() <= TOLERANCE);
    }

    #[test]
    fn purify_pure_state_is_product() {
        let rho = DensityMatrix::new(ComplexMatrix::diag(&[1.0, 0.0])).unwrap();
        let sf = schmidt_decompose(&purify(&rho));
        assert_eq!(sf.rank, 1);
    }

    #[test]
    fn purify_reduces_back_to_input() {
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        let rho = random_density(&mut rng, 4);
        let omega = purify(&rho);
        let reduced =
            partial_trace(omega.density().matrix(), omega.dims(), Subsystem::Alpha).unwrap();
        assert!(reduced.max_abs_diff(rho.matrix()) <= 1e-9);
    }

    #[test]
    fn q_is_zero_for_flat_coefficients() {
        let psi = maximally_entangled(3, &[0.0, 0.0, 0.0]).unwrap();
        let sf = schmidt_decompose(&psi);
        let pm = q_purity(&sf, 3).unwrap();
        assert!(pm.q <= TOLERANCE);
    }

    #[test]
    fn q_of_pure_states_matches_closed_form() {
        // dims (2,2), product state
        let mut amplitudes = vec![C64::ZERO; 4];
        amplitudes[0] = C64::ONE;
        let psi =
            BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: 2, n_beta: 2 }).unwrap();
        let sf = schmidt_decompose(&psi);
        let pm = q_purity(&sf, 2).unwrap();
        assert!((pm.q - (2.0 - 2.0_f64.sqrt()).sqrt()).abs() <= TOLERANCE);

        // same pure state padded to N = 4
        let mut amplitudes = vec![C64::ZERO; 16];
        amplitudes[0] = C64::ONE;
        let psi =
            BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: 4, n_beta: 4 }).unwrap();
        let pm = q_purity(&schmidt_decompose(&psi), 4).unwrap();
        assert!((pm.q - 1.0).abs() <= TOLERANCE);
    }

    #[test]
    fn q_rejects_padding_below_rank() {
        let sf = schmidt_decompose(&bell_nu());
        assert!(matches!(
            q_purity(&sf, 1),
            Err(Error::PaddingTooSmall { .. })
        ));
    }

    #[test]
    fn purity_measure_invariants_on_random_states() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for n in 2..=8 {
            let sf = random_schmidt_form(&mut rng, n, n);
            let pm = q_purity(&sf, n).unwrap();
            let nf = n as f64;
            assert!(pm.q >= 0.0 && pm.q <= (2.0 - 2.0 / nf.sqrt()).sqrt() + 1e-10);
            let sum_d: f64 = pm.d.iter().sum();
            let sum_d2: f64 = pm.d.iter().map(|x| x * x).sum();
            assert!((sum_d2 - pm.q * pm.q).abs() <= 1e-10);
            // coefficient identity: sum d^2 = -(2/sqrt(N)) sum d
            assert!((sum_d2 + 2.0 / nf.sqrt() * sum_d).abs() <= 1e-9);
            assert!((sum_d + nf.sqrt() / 2.0 * pm.q * pm.q).abs() <= 1e-9);
        }
    }

    #[test]
    fn omega_split_overlap_is_minus_half_q() {
        let mut rng = ChaCha12Rng::seed_from_u64(14);
        for n in [2, 3, 5] {
            let sf = random_schmidt_form(&mut rng, n, n);
            let split = omega_split(&sf, n).unwrap();
            let omega2 = split.omega2.expect("generic state has Q > 0");
            let ov = inner(split.omega1.amplitudes(), omega2.amplitudes());
            assert!((ov.re + split.q / 2.0).abs() <= 1e-9);
            assert!(ov.im.abs() <= 1e-9);
        }
    }

    #[test]
    fn omega_split_at_zero_q_returns_input() {
        let phases = [0.3, 1.1, 4.0];
        let psi = maximally_entangled(3, &phases).unwrap();
        let sf = schmidt_decompose(&psi);
        let split = omega_split(&sf, 3).unwrap();
        assert!(split.q <= tol::ABSENT_COMPONENT);
        assert!(split.omega2.is_none());
        let diff: f64 = psi
            .amplitudes()
            .iter()
            .zip(split.omega1.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff <= 1e-9);
    }

    #[test]
    fn omega_split_reassembles_rank_deficient_state() {
        let mut rng = ChaCha12Rng::seed_from_u64(15);
        // rank-3 state in 4x4 dims
        let inner_form = random_schmidt_form(&mut rng, 3, 3);
        let mut coeffs = inner_form.coeffs.clone();
        coeffs.push(0.0);
        let mut phases = inner_form.phases.clone();
        phases.push(0.0);
        let alpha = {
            let mut embedded = ComplexMatrix::zeros(4, 3);
            for i in 0..3 {
                for j in 0..3 {
                    embedded[(i, j)] = inner_form.alpha_basis[(i, j)];
                }
            }
            complete_orthonormal_basis(&embedded).unwrap()
        };
        let beta = {
            let mut embedded = ComplexMatrix::zeros(4, 3);
            for i in 0..3 {
                for j in 0..3 {
                    embedded[(i, j)] = inner_form.beta_basis[(i, j)];
                }
            }
            complete_orthonormal_basis(&embedded).unwrap()
        };
        let sf = SchmidtForm::new(coeffs, phases, alpha, beta).unwrap();
        assert_eq!(sf.rank, 3);

        let split = omega_split(&sf, 4).unwrap();
        let omega = sf.reassemble().unwrap();
        let omega2 = split.omega2.unwrap();
        let mut err2 = 0.0;
        for (i, &a) in omega.amplitudes().iter().enumerate() {
            let s = split.omega1.amplitudes()[i] + omega2.amplitudes()[i] * split.q;
            err2 += (a - s).norm_sqr();
        }
        assert!(err2.sqrt() <= 1e-9);
    }

    #[test]
    fn omega_split_enlarges_beta_when_needed() {
        let mut rng = ChaCha12Rng::seed_from_u64(16);
        let sf = random_schmidt_form(&mut rng, 4, 3); // M = 3 < N = 4
        let split = omega_split(&sf, 4).unwrap();
        assert_eq!(split.omega1.dims().n_beta, 4);
        let omega2 = split.omega2.unwrap();
        let embedded = sf.reassemble().unwrap().embed_beta(4).unwrap();
        let mut err2 = 0.0;
        for (i, &a) in embedded.amplitudes().iter().enumerate() {
            let s = split.omega1.amplitudes()[i] + omega2.amplitudes()[i] * split.q;
            err2 += (a - s).norm_sqr();
        }
        assert!(err2.sqrt() <= 1e-9);
        let ov = inner(split.omega1.amplitudes(), omega2.amplitudes());
        assert!((ov.re + split.q / 2.0).abs() <= 1e-9);
    }

    #[test]
    fn entropy_examples() {
        let pure = DensityMatrix::new(ComplexMatrix::diag(&[1.0, 0.0, 0.0])).unwrap();
        assert!(von_neumann_entropy(&pure).abs() <= TOLERANCE);
        for n in [2, 4, 7] {
            let s = von_neumann_entropy(&maximally_mixed(n));
            assert!((s - (n as f64).ln()).abs() <= TOLERANCE);
        }
        let rho = DensityMatrix::new(ComplexMatrix::diag(&[0.75, 0.25])).unwrap();
        let expected = -0.75 * 0.75_f64.ln() - 0.25 * 0.25_f64.ln();
        assert!((von_neumann_entropy(&rho) - expected).abs() <= TOLERANCE);
    }

    #[test]
    fn observable_entropy_equals_spectral_in_eigenbasis() {
        let rho = DensityMatrix::new(ComplexMatrix::diag(&[0.6, 0.3, 0.1])).unwrap();
        let h = shannon_entropy_observable(&rho, &ComplexMatrix::identity(3)).unwrap();
        assert!((h - von_neumann_entropy(&rho)).abs() <= 1e-9);
    }

    #[test]
    fn observable_entropy_of_maximally_mixed_qubit_is_ln2_in_any_basis() {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let half = maximally_mixed(2);
        for _ in 0..5 {
            let basis = crate::channels::haar_unitary(&mut rng, 2);
            let h = shannon_entropy_observable(&half, &basis).unwrap();
            assert!((h - 2.0_f64.ln()).abs() <= TOLERANCE);
        }
    }

    #[test]
    fn observable_entropy_dominates_spectral_entropy() {
        let mut rng = ChaCha12Rng::seed_from_u64(18);
        for n in 2..=6 {
            let rho = random_density(&mut rng, n);
            let basis = crate::channels::haar_unitary(&mut rng, n);
            let s = von_neumann_entropy(&rho);
            let h = shannon_entropy_observable(&rho, &basis).unwrap();
            assert!(s <= h + 1e-10);
        }
    }

    #[test]
    fn observable_entropy_rejects_non_unitary_basis() {
        let rho = maximally_mixed(2);
        let skew = ComplexMatrix::diag(&[1.0, 2.0]);
        assert!(matches!(
            shannon_entropy_observable(&rho, &skew),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn maximally_entangled_examples() {
        let psi = maximally_entangled(2, &[0.0, 0.0]).unwrap();
        assert!((psi.amplitudes()[0].re - SQRT_HALF).abs() <= TOLERANCE);
        assert!((psi.amplitudes()[3].re - SQRT_HALF).abs() <= TOLERANCE);
        assert!(psi.amplitudes()[1].norm() <= TOLERANCE);

        let psi = maximally_entangled(3, &[0.2, 2.5, 5.1]).unwrap();
        let reduced = partial_trace(psi.density().matrix(), psi.dims(), Subsystem::Beta).unwrap();
        let third = ComplexMatrix::diag(&[1.0 / 3.0; 3]);
        assert!(reduced.max_abs_diff(&third) <= TOLERANCE);
    }

    #[test]
    fn bell_state_is_maximally_entangled_with_relabeled_basis() {
        // |nu> = (|01> + |10>)/sqrt(2): computational alpha basis, swapped beta basis
        let swap = ComplexMatrix::from_entries(
            2,
            2,
            vec![C64::ZERO, C64::ONE, C64::ONE, C64::ZERO],
        )
        .unwrap();
        let sf = SchmidtForm::new(
            vec![SQRT_HALF, SQRT_HALF],
            vec![0.0, 0.0],
            ComplexMatrix::identity(2),
            swap,
        )
        .unwrap();
        let psi = sf.reassemble().unwrap();
        let diff: f64 = psi
            .amplitudes()
            .iter()
            .zip(bell_nu().amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff <= TOLERANCE);
    }

    #[test]
    fn random_generators_are_deterministic() {
        let a = random_pure_bipartite(&mut ChaCha12Rng::seed_from_u64(42), 3, 4);
        let b = random_pure_bipartite(&mut ChaCha12Rng::seed_from_u64(42), 3, 4);
        assert_eq!(a.amplitudes(), b.amplitudes());
        let c = random_density(&mut ChaCha12Rng::seed_from_u64(42), 3);
        let d = random_density(&mut ChaCha12Rng::seed_from_u64(42), 3);
        assert_eq!(c.matrix().as_slice(), d.matrix().as_slice());
    }

    #[test]
    fn random_density_passes_invariants() {
        let mut rng = ChaCha12Rng::seed_from_u64(19);
        let rho = random_density(&mut rng, 3);
        // DensityMatrix::new already validated; double-check the basics here
        assert!(rho.matrix().hermiticity_deviation() <= tol::HERMITICITY);
        assert!((rho.matrix().trace().re - 1.0).abs() <= tol::NORMALIZATION);
        let (values, _) = herm_eig(rho.matrix()).unwrap();
        assert!(values.iter().all(|&v| v >= -tol::PSD_CLIP));
        assert!((values.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn density_constructor_rejects_bad_inputs() {
        let not_herm = ComplexMatrix::from_entries(
            2,
            2,
            vec![C64::ONE, C64::ONE, C64::ZERO, C64::ZERO],
        )
        .unwrap();
        assert!(DensityMatrix::new(not_herm).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::diag(&[0.5, 0.6])).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::diag(&[1.5, -0.5])).is_err());
    }

    #[test]
    fn mixture_validates_weights() {
        let a = maximally_mixed(2);
        let b = DensityMatrix::new(ComplexMatrix::diag(&[1.0, 0.0])).unwrap();
        let mix = DensityMatrix::mixture(&[0.25, 0.75], &[a.clone(), b.clone()]).unwrap();
        assert!((mix.matrix()[(0, 0)].re - 0.875).abs() <= TOLERANCE);
        assert!(DensityMatrix::mixture(&[0.5, 0.6], &[a.clone(), b.clone()]).is_err());
        assert!(DensityMatrix::mixture(&[-0.5, 1.5], &[a, b]).is_err());
    }
}
