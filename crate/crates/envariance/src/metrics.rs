//! Distinguishability metrics and the purity-limited distance bound.
//!
//! The central quantity is `evaluate_bound`: for a unital channel E acting
//! on the alpha side of a purification and its counterpart acting on the
//! beta side, the trace distance between the two moved global states obeys
//!
//!   D_alpha <= D_alphabeta <= 2 sqrt(1 - |1 - Q^2 + Q^4/4|)
//!
//! where D_alpha is the distance the reduced state moves, and Q is the
//! coefficient-deviation purity of the state.

use crate::channels::{counterpart_channel, KrausChannel};
use crate::states::{q_purity, SchmidtForm};
use crate::tensor::{herm_eig, matrix_abs, outer, psd_sqrt, ComplexMatrix, Subsystem, C64};
use crate::{tol, Error, Result};

/// Checks that `a` and `b` are Hermitian and of equal square shape, and
/// returns their difference with a canonical overall sign (the first nonzero
/// entry in row-major order is made lexicographically positive). The
/// canonical sign makes the result independent of argument order, so the
/// distance is bitwise symmetric.
fn canonical_difference(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    for m in [a, b] {
        let dev = m.hermiticity_deviation();
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian { deviation: dev });
        }
    }
    let mut delta = a - b;
    for idx in 0..delta.as_slice().len() {
        let z = delta.as_slice()[idx];
        if z == C64::ZERO {
            continue;
        }
        if z.re < 0.0 || (z.re == 0.0 && z.im < 0.0) {
            delta = delta.scaled_re(-1.0);
        }
        break;
    }
    Ok(delta)
}

/// D(a, b) = (1/2) tr|a - b| for Hermitian matrices of equal dimension.
/// Accepts any Hermitian inputs (they need not have unit trace).
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let delta = canonical_difference(a, b)?;
    let (values, _) = herm_eig(&delta)?;
    Ok(0.5 * values.iter().map(|v| v.abs()).sum::<f64>())
}

/// The Helstrom projector onto the nonnegative eigenspace of a - b, and the
/// value tr[P(a - b)]. For density matrices the value equals the trace
/// distance, and no measurement effect 0 <= M <= I can beat it.
pub fn helstrom_projector(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
    // no sign canonicalization here: the projector is oriented toward `a`
    if !a.is_square() || !b.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    for m in [a, b] {
        let dev = m.hermiticity_deviation();
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian { deviation: dev });
        }
    }
    let delta = a - b;
    let (values, vectors) = herm_eig(&delta)?;
    let n = delta.rows();
    let mut projector = ComplexMatrix::zeros(n, n);
    let mut value = 0.0;
    for (j, &v) in values.iter().enumerate() {
        if v >= 0.0 {
            let col = vectors.col(j);
            projector = &projector + &outer(&col, &col);
            value += v;
        }
    }
    Ok((projector, value))
}

/// F(a, b) = tr sqrt(sqrt(a) b sqrt(a)). Requires both inputs PSD.
pub fn fidelity(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    let root = psd_sqrt(a)?;
    let inner = (&(&root * b) * &root).hermitized();
    let product_root = psd_sqrt(&inner)?;
    Ok(product_root.trace().re)
}

/// The purity-limited ceiling 2 sqrt(1 - |1 - Q^2 + Q^4/4|) on how far a
/// unital channel plus its counterpart can move a purification. Zero at
/// Q = 0, reaches 1 at Q = sqrt(2 - sqrt(3)), and grows to 2 sqrt(1 - 1/N)
/// territory for nearly pure states (where the trivial ceiling D <= 1 takes
/// over first).
pub fn purity_bound(q: f64) -> f64 {
    let inner = 1.0 - q * q + q.powi(4) / 4.0;
    2.0 * (1.0 - inner.abs()).max(0.0).sqrt()
}

/// Everything measured in one bound evaluation.
#[derive(Debug, Clone)]
pub struct BoundEvaluation {
    /// Coefficient-deviation purity at the padded dimension.
    pub q: f64,
    /// How far the alpha-reduced state moves under the channel.
    pub d_alpha: f64,
    /// How far the global purification moves when the channel acts on alpha
    /// and its counterpart acts on beta.
    pub d_alphabeta: f64,
    /// The purity-limited ceiling on d_alphabeta.
    pub bound: f64,
    /// bound - d_alphabeta; negative means a violation.
    pub margin_ab: f64,
    /// d_alphabeta - d_alpha; negative means a violation.
    pub margin_a: f64,
    /// Trace of the counterpart-moved state; 1 up to roundoff since the
    /// counterpart of a unital channel is trace preserving.
    pub beta_trace: f64,
}

/// Runs the full pipeline on one state and channel: pad the Schmidt form to
/// `n_padded` terms, transport the channel to the beta side over the
/// maximally entangled partner form, and measure both distances against the
/// closed-form ceiling. Requires a unital, trace-preserving channel acting
/// on the full alpha space (`ch.dim() == n_padded == dim H_alpha >= rank`).
pub fn evaluate_bound(
    sf: &SchmidtForm,
    ch: &KrausChannel,
    n_padded: usize,
) -> Result<BoundEvaluation> {
    let n_alpha = sf.dims().n_alpha;
    if ch.dim() != n_alpha {
        return Err(Error::DimensionMismatch {
            expected: n_alpha,
            found: ch.dim(),
        });
    }
    if n_padded != n_alpha {
        return Err(Error::DimensionMismatch {
            expected: n_alpha,
            found: n_padded,
        });
    }
    if !ch.is_trace_preserving() {
        return Err(Error::NotTracePreserving {
            deviation: ch.trace_preserving_deviation(),
        });
    }
    if !ch.is_unital() {
        return Err(Error::NotUnital {
            deviation: ch.unital_deviation(),
        });
    }
    let pf = sf.padded(n_padded)?;
    let dims = pf.dims();
    let pm = q_purity(&pf, n_padded)?;
    let omega = pf.reassemble()?;
    let rho = omega.density();

    let counterpart = counterpart_channel(ch, &pf.maximally_entangled_form())?;
    let moved_alpha = ch.apply_on_alpha(rho.matrix(), dims)?;
    let moved_beta = counterpart.apply_on_beta(rho.matrix(), dims)?;
    let d_alphabeta = trace_distance(&moved_alpha, &moved_beta)?;
    let beta_trace = moved_beta.trace().re;

    let rho_alpha = crate::tensor::partial_trace(rho.matrix(), dims, Subsystem::Alpha)?;
    let d_alpha = trace_distance(&ch.apply_raw(&rho_alpha), &rho_alpha)?;

    let bound = purity_bound(pm.q);
    Ok(BoundEvaluation {
        q: pm.q,
        d_alpha,
        d_alphabeta,
        bound,
        margin_ab: bound - d_alphabeta,
        margin_a: d_alphabeta - d_alpha,
        beta_trace,
    })
}

/// Ceiling for a mixture of purifications sharing Schmidt bases and phases:
/// by joint convexity, sum_m r_m (per-component ceiling at Q_m).
pub fn mixture_bound(weights: &[f64], qs: &[f64]) -> Result<f64> {
    if weights.len() != qs.len() {
        return Err(Error::LengthMismatch {
            expected: weights.len(),
            found: qs.len(),
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
    Ok(weights
        .iter()
        .zip(qs)
        .map(|(w, &q)| w * purity_bound(q))
        .sum())
}

/// 1/2 tr|a - b| computed through the absolute-value square root instead of
/// the eigenvalue sum; used as an independent cross-check in the test suites.
pub fn trace_distance_via_abs(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let delta = canonical_difference(a, b)?;
    Ok(0.5 * matrix_abs(&delta)?.trace().re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{
        generalized_measurement_example, haar_unitary, premeasurement_channel,
        random_mixed_unitary_channel, random_nonunital_channel, unitary_channel,
    };
    use crate::states::{
        maximally_mixed, random_density, random_pure_bipartite, random_schmidt_form,
        schmidt_decompose,
    };
    use crate::tensor::{inner, vec_norm, BipartiteDims};
    use crate::states::BipartitePureState;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    const TOLERANCE: f64 = 1e-10;

    fn random_unit_vector(rng: &mut ChaCha12Rng, n: usize) -> Vec<C64> {
        use rand_distr::StandardNormal;
        let mut v: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = vec_norm(&v);
        for x in v.iter_mut() {
            *x /= norm;
        }
        v
    }

    #[test]
    fn trace_distance_of_diagonal_pair() {
        let a = ComplexMatrix::diag(&[0.75, 0.25]);
        let b = ComplexMatrix::diag(&[0.5, 0.5]);
        let d = trace_distance(&a, &b).unwrap();
        assert!((d - 0.25).abs() <= TOLERANCE);
    }

    #[test]
    fn orthogonal_pure_states_are_perfectly_distinguishable() {
        let a = ComplexMatrix::diag(&[1.0, 0.0]);
        let b = ComplexMatrix::diag(&[0.0, 1.0]);
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() <= TOLERANCE);
    }

    #[test]
    fn trace_distance_is_bitwise_symmetric_and_faithful() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        for n in [2, 3, 5] {
            let a = random_density(&mut rng, n);
            let b = random_density(&mut rng, n);
            let d_ab = trace_distance(a.matrix(), b.matrix()).unwrap();
            let d_ba = trace_distance(b.matrix(), a.matrix()).unwrap();
            assert_eq!(d_ab.to_bits(), d_ba.to_bits());
            assert!(d_ab > 0.0 && d_ab <= 1.0 + 1e-12);
            assert_eq!(trace_distance(a.matrix(), a.matrix()).unwrap(), 0.0);
        }
    }

    #[test]
    fn trace_distance_satisfies_triangle_inequality() {
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        for _ in 0..5 {
            let a = random_density(&mut rng, 3);
            let b = random_density(&mut rng, 3);
            let c = random_density(&mut rng, 3);
            let ab = trace_distance(a.matrix(), b.matrix()).unwrap();
            let bc = trace_distance(b.matrix(), c.matrix()).unwrap();
            let ac = trace_distance(a.matrix(), c.matrix()).unwrap();
            assert!(ac <= ab + bc + 1e-12);
        }
    }

    #[test]
    fn trace_distance_agrees_with_abs_route() {
        let mut rng = ChaCha12Rng::seed_from_u64(43);
        let a = random_density(&mut rng, 4);
        let b = random_density(&mut rng, 4);
        let via_eigs = trace_distance(a.matrix(), b.matrix()).unwrap();
        let via_abs = trace_distance_via_abs(a.matrix(), b.matrix()).unwrap();
        assert!((via_eigs - via_abs).abs() <= 1e-10);
    }

    #[test]
    fn trace_distance_rejects_bad_inputs() {
        let a = ComplexMatrix::diag(&[1.0, 0.0]);
        let b = ComplexMatrix::diag(&[0.5, 0.25, 0.25]);
        assert!(trace_distance(&a, &b).is_err());
        let skew =
            ComplexMatrix::from_entries(2, 2, vec![C64::ONE, C64::ONE, C64::ZERO, C64::ZERO])
                .unwrap();
        assert!(matches!(
            trace_distance(&a, &skew),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn helstrom_projector_attains_the_distance() {
        let mut rng = ChaCha12Rng::seed_from_u64(44);
        for n in [2, 4] {
            let a = random_density(&mut rng, n);
            let b = random_density(&mut rng, n);
            let (p, value) = helstrom_projector(a.matrix(), b.matrix()).unwrap();
            let d = trace_distance(a.matrix(), b.matrix()).unwrap();
            assert!((value - d).abs() <= 1e-10);
            // idempotent and Hermitian
            assert!((&p * &p).max_abs_diff(&p) <= 1e-10);
            assert!(p.hermiticity_deviation() <= 1e-10);
            // no other effect 0 <= M <= I does better
            let delta = a.matrix() - b.matrix();
            for _ in 0..10 {
                let v = haar_unitary(&mut rng, n);
                let evs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
                let m = &(&v * &ComplexMatrix::diag(&evs)) * &v.adjoint();
                let attained = (&m * &delta).trace().re;
                assert!(attained <= value + 1e-10);
            }
        }
    }

    #[test]
    fn fidelity_basics() {
        let mut rng = ChaCha12Rng::seed_from_u64(45);
        let rho = random_density(&mut rng, 3);
        assert!((fidelity(rho.matrix(), rho.matrix()).unwrap() - 1.0).abs() <= 1e-9);

        // pure states: F = |<u|v>|. The product matrix is rank 1, and the
        // square root turns its ~1e-16 null-space roundoff into ~1e-8 noise.
        let u = random_unit_vector(&mut rng, 3);
        let v = random_unit_vector(&mut rng, 3);
        let f = fidelity(&outer(&u, &u), &outer(&v, &v)).unwrap();
        assert!((f - inner(&u, &v).norm()).abs() <= 1e-7);

        // commuting case: F = sum sqrt(p_i q_i)
        let a = ComplexMatrix::diag(&[0.7, 0.2, 0.1]);
        let b = ComplexMatrix::diag(&[0.1, 0.3, 0.6]);
        let expected: f64 = (0.7_f64 * 0.1).sqrt() + (0.2_f64 * 0.3).sqrt() + (0.1_f64 * 0.6).sqrt();
        assert!((fidelity(&a, &b).unwrap() - expected).abs() <= 1e-10);

        // symmetric up to roundoff
        let sigma = random_density(&mut rng, 3);
        let f_ab = fidelity(rho.matrix(), sigma.matrix()).unwrap();
        let f_ba = fidelity(sigma.matrix(), rho.matrix()).unwrap();
        assert!((f_ab - f_ba).abs() <= 1e-9);
    }

    #[test]
    fn fidelity_rejects_non_psd_inputs() {
        let a = ComplexMatrix::diag(&[1.5, -0.5]);
        let b = ComplexMatrix::diag(&[0.5, 0.5]);
        assert!(matches!(
            fidelity(&a, &b),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
        assert!(matches!(
            fidelity(&b, &a),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn fuchs_van_de_graaf_inequalities_hold() {
        let mut rng = ChaCha12Rng::seed_from_u64(46);
        for _ in 0..5 {
            let a = random_density(&mut rng, 3);
            let b = random_density(&mut rng, 3);
            let d = trace_distance(a.matrix(), b.matrix()).unwrap();
            let f = fidelity(a.matrix(), b.matrix()).unwrap();
            assert!(1.0 - f <= d + 1e-9);
            assert!(d <= (1.0 - f * f).sqrt() + 1e-9);
        }
        // pure states saturate the upper form: D = sqrt(1 - F^2)
        // (1e-7: the rank-1 square root amplifies null-space roundoff)
        let u = random_unit_vector(&mut rng, 3);
        let v = random_unit_vector(&mut rng, 3);
        let d = trace_distance(&outer(&u, &u), &outer(&v, &v)).unwrap();
        let f = fidelity(&outer(&u, &u), &outer(&v, &v)).unwrap();
        assert!((d - (1.0 - f * f).sqrt()).abs() <= 1e-7);
    }

    #[test]
    fn trace_distance_contracts_under_channels() {
        let mut rng = ChaCha12Rng::seed_from_u64(47);
        let a = random_density(&mut rng, 3);
        let b = random_density(&mut rng, 3);
        let d0 = trace_distance(a.matrix(), b.matrix()).unwrap();
        let channels = vec![
            random_mixed_unitary_channel(&mut rng, 3, 3),
            random_nonunital_channel(&mut rng, 3, 2),
            premeasurement_channel(&haar_unitary(&mut rng, 3)).unwrap(),
        ];
        for ch in channels {
            let d1 = trace_distance(
                ch.apply(&a).unwrap().matrix(),
                ch.apply(&b).unwrap().matrix(),
            )
            .unwrap();
            assert!(d1 <= d0 + 1e-10);
        }
    }

    #[test]
    fn purity_bound_pinned_values() {
        assert_eq!(purity_bound(0.0), 0.0);
        // threshold where the ceiling crosses 1
        let q_star = (2.0 - 3.0_f64.sqrt()).sqrt();
        assert!((purity_bound(q_star) - 1.0).abs() <= 1e-12);
        // a pure qubit state padded to N = 2 has Q = sqrt(2 - sqrt(2));
        // the ceiling there is sqrt(2), already above the trivial limit 1
        let q_pure_2 = (2.0 - 2.0_f64.sqrt()).sqrt();
        assert!((purity_bound(q_pure_2) - 2.0_f64.sqrt()).abs() <= 1e-12);
        // monotone on the reachable range [0, sqrt(2)]
        let mut prev = -1.0;
        for i in 0..=100 {
            let q = 2.0_f64.sqrt() * i as f64 / 100.0;
            let b = purity_bound(q);
            assert!(b >= prev);
            prev = b;
        }
        assert!((purity_bound(2.0_f64.sqrt()) - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn bound_holds_for_random_states_and_channels() {
        let mut rng = ChaCha12Rng::seed_from_u64(48);
        for n in 2..=4 {
            let sf = random_schmidt_form(&mut rng, n, n);
            let channels = vec![
                unitary_channel(&haar_unitary(&mut rng, n)).unwrap(),
                premeasurement_channel(&haar_unitary(&mut rng, n)).unwrap(),
                random_mixed_unitary_channel(&mut rng, n, 3),
            ];
            for ch in channels {
                let ev = evaluate_bound(&sf, &ch, n).unwrap();
                assert!(ev.margin_ab >= -1e-10, "ceiling violated: {:?}", ev);
                assert!(ev.margin_a >= -1e-10, "ordering violated: {:?}", ev);
                assert!((ev.beta_trace - 1.0).abs() <= 1e-9);
                assert!(ev.d_alpha >= -1e-12 && ev.d_alphabeta <= 2.0 + 1e-12);
            }
        }
    }

    #[test]
    fn bound_evaluation_on_identity_channel_is_all_zeros() {
        let mut rng = ChaCha12Rng::seed_from_u64(49);
        let sf = random_schmidt_form(&mut rng, 3, 3);
        let ch = unitary_channel(&ComplexMatrix::identity(3)).unwrap();
        let ev = evaluate_bound(&sf, &ch, 3).unwrap();
        assert!(ev.d_alpha <= 1e-12 && ev.d_alphabeta <= 1e-12);
        assert!((ev.margin_ab - ev.bound).abs() <= 1e-12);
    }

    #[test]
    fn basis_swap_on_product_state_moves_reduced_state_fully() {
        // product state |0>|0> in 2x2 dims, channel = X swap
        let mut amplitudes = vec![C64::ZERO; 4];
        amplitudes[0] = C64::ONE;
        let psi =
            BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: 2, n_beta: 2 }).unwrap();
        let sf = schmidt_decompose(&psi);
        let sx =
            ComplexMatrix::from_entries(2, 2, vec![C64::ZERO, C64::ONE, C64::ONE, C64::ZERO])
                .unwrap();
        let ch = unitary_channel(&sx).unwrap();
        let ev = evaluate_bound(&sf, &ch, 2).unwrap();
        assert!((ev.d_alpha - 1.0).abs() <= 1e-10);
        assert!(ev.d_alphabeta >= 1.0 - 1e-10);
        assert!((ev.q - (2.0 - 2.0_f64.sqrt()).sqrt()).abs() <= 1e-10);
        assert!(ev.margin_ab >= 0.0);
    }

    #[test]
    fn bound_evaluation_rejects_invalid_setups() {
        let mut rng = ChaCha12Rng::seed_from_u64(50);
        let sf = random_schmidt_form(&mut rng, 3, 3);
        // non-unital channel
        let nonunital = random_nonunital_channel(&mut rng, 3, 2);
        assert!(matches!(
            evaluate_bound(&sf, &nonunital, 3),
            Err(Error::NotUnital { .. })
        ));
        // dimension mismatch between channel and alpha space
        let small = unitary_channel(&haar_unitary(&mut rng, 2)).unwrap();
        assert!(evaluate_bound(&sf, &small, 3).is_err());
        // padding must fill the alpha space
        let full = unitary_channel(&haar_unitary(&mut rng, 3)).unwrap();
        assert!(evaluate_bound(&sf, &full, 2).is_err());
        // qubit generalized measurement: trace preserving but not unital
        let sf2 = random_schmidt_form(&mut rng, 2, 2);
        assert!(matches!(
            evaluate_bound(&sf2, &generalized_measurement_example(), 2),
            Err(Error::NotUnital { .. })
        ));
    }

    #[test]
    fn bound_evaluation_pads_rank_deficient_states() {
        let mut rng = ChaCha12Rng::seed_from_u64(51);
        // rank-1 product state over a 3-dimensional alpha space
        let mut amplitudes = vec![C64::ZERO; 9];
        amplitudes[0] = C64::ONE;
        let psi =
            BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: 3, n_beta: 3 }).unwrap();
        let sf = schmidt_decompose(&psi);
        assert_eq!(sf.rank, 1);
        let ch = random_mixed_unitary_channel(&mut rng, 3, 2);
        let ev = evaluate_bound(&sf, &ch, 3).unwrap();
        // a pure state padded to N terms has Q = sqrt(2 - 2/sqrt(N))
        let expected_q = (2.0 - 2.0 / 3.0_f64.sqrt()).sqrt();
        assert!((ev.q - expected_q).abs() <= 1e-10);
        assert!(ev.margin_ab >= -1e-10 && ev.margin_a >= -1e-10);
    }

    #[test]
    fn mixture_bound_is_the_weighted_sum() {
        let weights = [0.25, 0.75];
        let qs = [0.3, 0.9];
        let expected = 0.25 * purity_bound(0.3) + 0.75 * purity_bound(0.9);
        assert!((mixture_bound(&weights, &qs).unwrap() - expected).abs() <= 1e-12);
        assert!(mixture_bound(&[0.5, 0.6], &qs).is_err());
        assert!(mixture_bound(&[0.5], &qs).is_err());
        assert!(mixture_bound(&[], &[]).is_err());
    }

    #[test]
    fn bound_beats_distance_for_near_uniform_states() {
        // at small Q the ceiling pinches distances toward zero
        let mut rng = ChaCha12Rng::seed_from_u64(52);
        let n = 3;
        // lightly perturbed flat coefficients
        let eps = 0.01;
        let mut coeffs = vec![
            (1.0 / 3.0_f64 + eps).sqrt(),
            (1.0 / 3.0_f64).sqrt(),
            (1.0 / 3.0_f64 - eps).sqrt(),
        ];
        let norm: f64 = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        for c in coeffs.iter_mut() {
            *c /= norm;
        }
        let sf = crate::states::SchmidtForm::new(
            coeffs,
            vec![0.0; 3],
            haar_unitary(&mut rng, n),
            haar_unitary(&mut rng, n),
        )
        .unwrap();
        let ch = premeasurement_channel(&haar_unitary(&mut rng, n)).unwrap();
        let ev = evaluate_bound(&sf, &ch, n).unwrap();
        assert!(ev.bound < 0.1, "small perturbation should give a tight ceiling");
        assert!(ev.d_alphabeta <= ev.bound + 1e-10);
    }
}
