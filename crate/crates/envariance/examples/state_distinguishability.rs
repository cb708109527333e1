//! Trace distance, the measurement that attains it, and fidelity, with the
//! two-sided relation between the metrics on random pairs.

use envariance::metrics::{fidelity, helstrom_projector, trace_distance};
use envariance::states::random_density;
use rand::SeedableRng;

fn main() -> envariance::Result<()> {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(13);
    let n = 4;

    println!("random pairs of {n}-dimensional states:");
    println!("1 - F <= D <= sqrt(1 - F^2)");
    for _ in 0..5 {
        let a = random_density(&mut rng, n);
        let b = random_density(&mut rng, n);
        let d = trace_distance(a.matrix(), b.matrix())?;
        let f = fidelity(a.matrix(), b.matrix())?;
        println!(
            "  {:.6} <= {d:.6} <= {:.6}",
            1.0 - f,
            (1.0 - f * f).sqrt()
        );
    }

    // the Helstrom projector turns the distance into an observable fact:
    // its outcome probabilities differ by exactly D
    let a = random_density(&mut rng, n);
    let b = random_density(&mut rng, n);
    let d = trace_distance(a.matrix(), b.matrix())?;
    let (projector, _) = helstrom_projector(a.matrix(), b.matrix())?;
    let gap = (&projector * &(a.matrix() - b.matrix())).trace().re;
    println!();
    println!("optimal projector: tr P (a - b) = {gap:.9}");
    println!("trace distance:                  {d:.9}");
    Ok(())
}
