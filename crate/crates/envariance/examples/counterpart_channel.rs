//! Over a maximally entangled state, a unital channel on one subsystem is
//! reproduced exactly by a channel on the other subsystem. The construction
//! is phase sensitive: conjugating the Schmidt phases is what makes it work.

use envariance::channels::{
    counterpart_channel, counterpart_elements, counterpart_identity_residual, haar_unitary,
    random_mixed_unitary_channel, CounterpartPhase,
};
use envariance::states::SchmidtForm;
use envariance::tensor::{partial_trace, Subsystem};
use rand::{Rng, SeedableRng};

fn main() -> envariance::Result<()> {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(31);
    let n = 3;

    // flat coefficients with nonzero phases and rotated bases
    let coeffs = vec![1.0 / (n as f64).sqrt(); n];
    let phases: Vec<f64> = (0..n)
        .map(|_| rng.random_range(0.1..std::f64::consts::TAU))
        .collect();
    let form = SchmidtForm::new(
        coeffs,
        phases,
        haar_unitary(&mut rng, n),
        haar_unitary(&mut rng, n),
    )?;

    let ch = random_mixed_unitary_channel(&mut rng, n, 3);
    let counterpart = counterpart_channel(&ch, &form)?;

    println!("original: unital deviation {:.2e}", ch.unital_deviation());
    println!(
        "counterpart: trace-preserving deviation {:.2e}",
        counterpart.trace_preserving_deviation()
    );

    // the two sides act identically on the shared state
    let rho = form.reassemble()?.density();
    let dims = form.dims();
    let via_alpha = ch.apply_on_alpha(rho.matrix(), dims)?;
    let via_beta = counterpart.apply_on_beta(rho.matrix(), dims)?;
    println!("action mismatch: {:.2e}", via_alpha.max_abs_diff(&via_beta));

    // and the beta action never disturbs the alpha marginal
    let marginal = partial_trace(&via_beta, dims, Subsystem::Alpha)?;
    let before = partial_trace(rho.matrix(), dims, Subsystem::Alpha)?;
    println!("alpha marginal shift: {:.2e}", marginal.max_abs_diff(&before));

    // taking the Schmidt phases literally instead of conjugated breaks
    // the identity
    for phase in [CounterpartPhase::Conjugate, CounterpartPhase::Literal] {
        let elements = counterpart_elements(&ch, &form, phase)?;
        let residual = counterpart_identity_residual(&ch, &elements, &form)?;
        println!("{phase:?} phase convention: residual {residual:.2e}");
    }
    Ok(())
}
