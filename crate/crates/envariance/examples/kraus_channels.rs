//! Kraus channel constructors, the trace-preservation and unitality flags,
//! and the uniform state as the fixed point of unital channels.

use envariance::channels::{
    compose, generalized_measurement_example, haar_unitary, premeasurement_channel,
    random_mixed_unitary_channel, unitary_channel,
};
use envariance::metrics::trace_distance;
use envariance::states::maximally_mixed;
use rand::SeedableRng;

fn main() -> envariance::Result<()> {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
    let n = 3;

    let rotate = unitary_channel(&haar_unitary(&mut rng, n))?;
    let premeasure = premeasurement_channel(&haar_unitary(&mut rng, n))?;
    let mixed = random_mixed_unitary_channel(&mut rng, n, 4);
    let composed = compose(&premeasure, &rotate)?;
    let control = generalized_measurement_example();

    let uniform = maximally_mixed(n);
    let qubit_uniform = maximally_mixed(2);
    println!("channel            k  tp-dev    unital-dev  d(E(I/N), I/N)");
    for (name, ch) in [
        ("unitary", &rotate),
        ("premeasurement", &premeasure),
        ("mixed-unitary", &mixed),
        ("composed", &composed),
        ("non-unital control", &control),
    ] {
        let fixed = if ch.dim() == n { &uniform } else { &qubit_uniform };
        let moved = ch.apply(fixed)?;
        let d = trace_distance(moved.matrix(), fixed.matrix())?;
        println!(
            "{name:<18} {:>2}  {:.2e}  {:.4e}  {d:.6}",
            ch.k(),
            ch.trace_preserving_deviation(),
            ch.unital_deviation(),
        );
    }
    println!();
    println!("every unital channel leaves the uniform state in place;");
    println!("the control is trace preserving yet moves it by 1/2 exactly");
    Ok(())
}
