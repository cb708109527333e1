//! Kraus channels, envariant unitary pairs, and the counterpart map that
//! transports a channel on one side of a maximally entangled state to the
//! other side.
//!
//! The counterpart of E_alpha = {E_k} over a Schmidt form with bases
//! {alpha_j}, {beta_j} and phases phi_j has elements with beta-basis matrix
//!
//!   counterpart(E)_ik = e^{i(phi_i - phi_k)} <alpha_k|E|alpha_i>
//!
//! a phase-dressed transpose. Applying {E_k} on alpha and the counterparts
//! on beta produces the same state whenever the form is maximally entangled
//! (element by element, for any operator), while the counterpart set is
//! trace preserving exactly when the original set is unital.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::states::{BipartitePureState, DensityMatrix, SchmidtForm};
use crate::tensor::{kron, BipartiteDims, ComplexMatrix, C64};
use crate::{tol, Error, Result};

/// A channel rho -> sum_k E_k rho E_k^dag given by its Kraus elements.
/// Trace preservation and unitality are measured at construction and
/// flagged at the 1e-9 threshold.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    elements: Vec<ComplexMatrix>,
    dim: usize,
    tp_deviation: f64,
    unital_deviation: f64,
}

impl KrausChannel {
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let first = elements.first().ok_or(Error::EmptyChannel)?;
        if !first.is_square() {
            return Err(Error::NotSquare {
                rows: first.rows(),
                cols: first.cols(),
            });
        }
        let dim = first.rows();
        for e in &elements {
            if e.rows() != dim || e.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.rows().max(e.cols()),
                });
            }
        }
        let mut sum_dag_e = ComplexMatrix::zeros(dim, dim);
        let mut sum_e_dag = ComplexMatrix::zeros(dim, dim);
        for e in &elements {
            let adj = e.adjoint();
            sum_dag_e = &sum_dag_e + &(&adj * e);
            sum_e_dag = &sum_e_dag + &(e * &adj);
        }
        let id = ComplexMatrix::identity(dim);
        Ok(Self {
            elements,
            dim,
            tp_deviation: sum_dag_e.max_abs_diff(&id),
            unital_deviation: sum_e_dag.max_abs_diff(&id),
        })
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    /// max-abs deviation of sum E_k^dag E_k from the identity.
    pub fn trace_preserving_deviation(&self) -> f64 {
        self.tp_deviation
    }

    /// max-abs deviation of sum E_k E_k^dag from the identity.
    pub fn unital_deviation(&self) -> f64 {
        self.unital_deviation
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.tp_deviation <= tol::CHANNEL_FLAG
    }

    pub fn is_unital(&self) -> bool {
        self.unital_deviation <= tol::CHANNEL_FLAG
    }

    /// sum_k E_k rho E_k^dag on a density matrix; requires the
    /// trace-preserving flag.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        if !self.is_trace_preserving() {
            return Err(Error::NotTracePreserving {
                deviation: self.tp_deviation,
            });
        }
        Ok(DensityMatrix::new_unchecked(self.apply_raw(rho.matrix())))
    }

    /// sum_k E_k m E_k^dag on any square matrix of matching dimension.
    pub fn apply_raw(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.elements {
            acc = &acc + &(&(e * m) * &e.adjoint());
        }
        acc
    }

    /// Acts as E tensor id on a composite-system matrix.
    pub fn apply_on_alpha(&self, composite: &ComplexMatrix, dims: BipartiteDims) -> Result<ComplexMatrix> {
        if self.dim != dims.n_alpha {
            return Err(Error::DimensionMismatch {
                expected: dims.n_alpha,
                found: self.dim,
            });
        }
        self.apply_lifted(composite, dims, true)
    }

    /// Acts as id tensor E on a composite-system matrix.
    pub fn apply_on_beta(&self, composite: &ComplexMatrix, dims: BipartiteDims) -> Result<ComplexMatrix> {
        if self.dim != dims.n_beta {
            return Err(Error::DimensionMismatch {
                expected: dims.n_beta,
                found: self.dim,
            });
        }
        self.apply_lifted(composite, dims, false)
    }

    fn apply_lifted(
        &self,
        composite: &ComplexMatrix,
        dims: BipartiteDims,
        on_alpha: bool,
    ) -> Result<ComplexMatrix> {
        let total = dims.total();
        if composite.rows() != total || composite.cols() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: composite.rows(),
            });
        }
        let mut acc = ComplexMatrix::zeros(total, total);
        for e in &self.elements {
            let lifted = if on_alpha {
                kron(e, &ComplexMatrix::identity(dims.n_beta))
            } else {
                kron(&ComplexMatrix::identity(dims.n_alpha), e)
            };
            acc = &acc + &(&(&lifted * composite) * &lifted.adjoint());
        }
        Ok(acc)
    }
}

/// rho -> U rho U^dag.
pub fn unitary_channel(u: &ComplexMatrix) -> Result<KrausChannel> {
    let dev = u.unitarity_deviation();
    if !u.is_square() || dev > tol::UNITARITY {
        return Err(Error::NotUnitary { deviation: dev });
    }
    KrausChannel::new(vec![u.clone()])
}

/// Projects onto the columns of `basis`: rho -> sum_i |b_i><b_i| rho |b_i><b_i|.
/// Kills all coherences in that basis; the fixed points are the states
/// diagonal in it.
pub fn premeasurement_channel(basis: &ComplexMatrix) -> Result<KrausChannel> {
    let dev = basis.unitarity_deviation();
    if !basis.is_square() || dev > tol::UNITARITY {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let n = basis.rows();
    let elements = (0..n)
        .map(|i| {
            let b = basis.col(i);
            crate::tensor::outer(&b, &b)
        })
        .collect();
    KrausChannel::new(elements)
}

/// rho -> sum_i p_i U_i rho U_i^dag.
pub fn mixed_unitary_channel(probs: &[f64], unitaries: &[ComplexMatrix]) -> Result<KrausChannel> {
    if probs.len() != unitaries.len() {
        return Err(Error::LengthMismatch {
            expected: probs.len(),
            found: unitaries.len(),
        });
    }
    if probs.is_empty() {
        return Err(Error::EmptyChannel);
    }
    if probs.iter().any(|&p| p < 0.0) {
        return Err(Error::InvalidProbabilities("negative probability".into()));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > tol::CHANNEL_FLAG {
        return Err(Error::InvalidProbabilities(format!(
            "probabilities sum to {sum}, expected 1"
        )));
    }
    let mut elements = Vec::with_capacity(probs.len());
    for (p, u) in probs.iter().zip(unitaries) {
        let dev = u.unitarity_deviation();
        if !u.is_square() || dev > tol::UNITARITY {
            return Err(Error::NotUnitary { deviation: dev });
        }
        elements.push(u.scaled_re(p.sqrt()));
    }
    KrausChannel::new(elements)
}

/// The composition rho -> outer(inner(rho)), with elements O_i I_j.
pub fn compose(outer_ch: &KrausChannel, inner_ch: &KrausChannel) -> Result<KrausChannel> {
    if outer_ch.dim() != inner_ch.dim() {
        return Err(Error::DimensionMismatch {
            expected: outer_ch.dim(),
            found: inner_ch.dim(),
        });
    }
    let mut elements = Vec::with_capacity(outer_ch.k() * inner_ch.k());
    for o in outer_ch.elements() {
        for i in inner_ch.elements() {
            elements.push(o * i);
        }
    }
    KrausChannel::new(elements)
}

/// The qubit channel with elements M_1 = |0><0|, M_2 = |0><1|: trace
/// preserving but not unital, it maps every state to |0><0|. Useful as a
/// negative control, since it moves the maximally mixed state by trace
/// distance 1/2.
pub fn generalized_measurement_example() -> KrausChannel {
    let m1 = ComplexMatrix::from_entries(
        2,
        2,
        vec![C64::ONE, C64::ZERO, C64::ZERO, C64::ZERO],
    )
    .unwrap();
    let m2 = ComplexMatrix::from_entries(
        2,
        2,
        vec![C64::ZERO, C64::ONE, C64::ZERO, C64::ZERO],
    )
    .unwrap();
    KrausChannel::new(vec![m1, m2]).unwrap()
}

/// A pair of local unitaries whose product leaves a given state unchanged.
#[derive(Debug, Clone)]
pub struct EnvariantPair {
    pub u_alpha: ComplexMatrix,
    pub u_beta: ComplexMatrix,
    pub lambdas: Vec<f64>,
}

/// Phase unitaries e^{+i lambda_j} on the alpha Schmidt vectors and
/// e^{-i lambda_j} on the beta ones (identity on the complements). The pair
/// leaves the reassembled state invariant for any coefficients.
pub fn envariant_phase_pair(
    sf: &SchmidtForm,
    lambdas: &[f64],
    dims: BipartiteDims,
) -> Result<EnvariantPair> {
    if dims != sf.dims() {
        return Err(Error::DimensionMismatch {
            expected: sf.dims().total(),
            found: dims.total(),
        });
    }
    if lambdas.len() != sf.rank {
        return Err(Error::LengthMismatch {
            expected: sf.rank,
            found: lambdas.len(),
        });
    }
    let build = |basis: &ComplexMatrix, sign: f64| {
        let n = basis.rows();
        let mut phase = ComplexMatrix::identity(n);
        for (j, &l) in lambdas.iter().enumerate() {
            phase[(j, j)] = C64::from_polar(1.0, sign * l);
        }
        &(basis * &phase) * &basis.adjoint()
    };
    Ok(EnvariantPair {
        u_alpha: build(&sf.alpha_basis, 1.0),
        u_beta: build(&sf.beta_basis, -1.0),
        lambdas: lambdas.to_vec(),
    })
}

/// How far (u_alpha tensor u_beta)|psi> lands from |psi>, as the max-abs
/// difference of amplitude matrices: U_alpha Psi U_beta^T vs Psi.
pub fn envariance_deviation(
    u_alpha: &ComplexMatrix,
    u_beta: &ComplexMatrix,
    psi: &BipartitePureState,
) -> Result<f64> {
    for u in [u_alpha, u_beta] {
        let dev = u.unitarity_deviation();
        if !u.is_square() || dev > tol::UNITARITY {
            return Err(Error::NotUnitary { deviation: dev });
        }
    }
    let dims = psi.dims();
    if u_alpha.rows() != dims.n_alpha || u_beta.rows() != dims.n_beta {
        return Err(Error::DimensionMismatch {
            expected: dims.n_alpha,
            found: u_alpha.rows(),
        });
    }
    let amp = psi.amplitude_matrix();
    let moved = &(u_alpha * &amp) * &u_beta.transpose();
    Ok(moved.max_abs_diff(&amp))
}

/// Does (u_alpha tensor u_beta)|psi> = |psi> within `tolerance`?
pub fn check_envariance(
    u_alpha: &ComplexMatrix,
    u_beta: &ComplexMatrix,
    psi: &BipartitePureState,
    tolerance: f64,
) -> Result<bool> {
    Ok(envariance_deviation(u_alpha, u_beta, psi)? <= tolerance)
}

/// Which phase factor multiplies column k of the counterpart elements.
/// `Conjugate` (e^{-i phi_k}, canceling the row factor e^{+i phi_i} when
/// k = i) is the convention under which the defining identity holds for all
/// phase choices; `Literal` (e^{+i phi_k}) doubles the phases and is kept
/// for side-by-side comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounterpartPhase {
    Conjugate,
    Literal,
}

/// Counterpart elements of `ch` over `form`, one per Kraus element:
/// B (Phi mu^T Phi') B^dag with mu = A^dag E A, Phi = diag(e^{i phi_j}),
/// and Phi' given by the phase convention.
pub fn counterpart_elements(
    ch: &KrausChannel,
    form: &SchmidtForm,
    phase: CounterpartPhase,
) -> Result<Vec<ComplexMatrix>> {
    let n = form.alpha_basis.rows();
    let m = form.beta_basis.rows();
    let l = form.coeffs.len();
    if ch.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ch.dim(),
        });
    }
    if l != n {
        // every alpha direction must carry a phase for the transport
        return Err(Error::DimensionMismatch {
            expected: n,
            found: l,
        });
    }
    let beta_sub = ComplexMatrix::from_fn(m, n, |i, j| form.beta_basis[(i, j)]);
    let beta_sub_adj = beta_sub.adjoint();
    let alpha_adj = form.alpha_basis.adjoint();
    let mut out = Vec::with_capacity(ch.k());
    for e in ch.elements() {
        let mu = &(&alpha_adj * e) * &form.alpha_basis;
        let mut middle = mu.transpose();
        for i in 0..n {
            for j in 0..n {
                let col_sign = match phase {
                    CounterpartPhase::Conjugate => -form.phases[j],
                    CounterpartPhase::Literal => form.phases[j],
                };
                let factor = C64::from_polar(1.0, form.phases[i] + col_sign);
                middle[(i, j)] *= factor;
            }
        }
        out.push(&(&beta_sub * &middle) * &beta_sub_adj);
    }
    Ok(out)
}

/// max-abs difference between `ch` acting on alpha and `beta_elements`
/// acting on beta, both applied to the reassembled |Omega><Omega|.
pub fn counterpart_identity_residual(
    ch: &KrausChannel,
    beta_elements: &[ComplexMatrix],
    form: &SchmidtForm,
) -> Result<f64> {
    let dims = form.dims();
    let rho = form.reassemble()?.density();
    let lhs = ch.apply_on_alpha(rho.matrix(), dims)?;
    let beta_ch = KrausChannel::new(beta_elements.to_vec())?;
    let rhs = beta_ch.apply_on_beta(rho.matrix(), dims)?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// Transports a unital channel on alpha to the beta side of a maximally
/// entangled form. Two gates: the defining identity must hold to 1e-9
/// (it fails when the form is not maximally entangled), and the transported
/// set must be trace preserving (it fails exactly when `ch` is not unital,
/// in which case the counterpart is not a channel at all).
pub fn counterpart_channel(ch: &KrausChannel, form: &SchmidtForm) -> Result<KrausChannel> {
    let elements = counterpart_elements(ch, form, CounterpartPhase::Conjugate)?;
    let residual = counterpart_identity_residual(ch, &elements, form)?;
    if residual > tol::IDENTITY_CHECK {
        return Err(Error::CounterpartIdentity { residual });
    }
    let transported = KrausChannel::new(elements)?;
    if !transported.is_trace_preserving() {
        return Err(Error::NotTracePreserving {
            deviation: transported.trace_preserving_deviation(),
        });
    }
    Ok(transported)
}

/// The beta unitary that undoes `u_alpha` on a maximally entangled form:
/// the adjoint of the transported unitary, extended by the identity on the
/// complement of the beta Schmidt subspace.
pub fn envariant_partner(u_alpha: &ComplexMatrix, form: &SchmidtForm) -> Result<ComplexMatrix> {
    if !form.is_maximally_entangled(tol::CHANNEL_FLAG) {
        let c = 1.0 / (form.coeffs.len() as f64).sqrt();
        let deviation = form
            .coeffs
            .iter()
            .map(|x| (x - c).abs())
            .fold(0.0, f64::max);
        return Err(Error::NotMaximallyEntangled { deviation });
    }
    let ch = unitary_channel(u_alpha)?;
    let transported = counterpart_elements(&ch, form, CounterpartPhase::Conjugate)?.remove(0);
    let n = form.coeffs.len();
    let m = form.beta_basis.rows();
    let beta_sub = ComplexMatrix::from_fn(m, n, |i, j| form.beta_basis[(i, j)]);
    let complement = &ComplexMatrix::identity(m) - &(&beta_sub * &beta_sub.adjoint());
    Ok(&transported.adjoint() + &complement)
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
/// correction that makes the factorization unique.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = nalgebra::DMatrix::<Complex64>::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::ONE };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_na(&q)
}

/// Flat-Dirichlet probability vector.
pub fn random_probabilities<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..k).map(|_| rng.sample(Exp1)).collect();
    let sum: f64 = p.iter().sum();
    for x in p.iter_mut() {
        *x /= sum;
    }
    p
}

/// A random mixture of `k` Haar unitaries with Dirichlet weights.
pub fn random_mixed_unitary_channel<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> KrausChannel {
    let probs = random_probabilities(rng, k);
    let unitaries: Vec<ComplexMatrix> = (0..k).map(|_| haar_unitary(rng, n)).collect();
    mixed_unitary_channel(&probs, &unitaries).expect("sampled inputs are valid")
}

/// A random trace-preserving channel that is generically not unital: the
/// first n columns of a Haar unitary on C^{nk}, cut into k stacked blocks.
pub fn random_nonunital_channel<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> KrausChannel {
    loop {
        let big = haar_unitary(rng, n * k);
        let elements: Vec<ComplexMatrix> = (0..k)
            .map(|b| ComplexMatrix::from_fn(n, n, |i, j| big[(b * n + i, j)]))
            .collect();
        let ch = KrausChannel::new(elements).expect("isometry blocks are valid elements");
        if !ch.is_unital() {
            return ch;
        }
        // a Haar isometry is almost surely non-unital; resample the rare miss
    }
}
