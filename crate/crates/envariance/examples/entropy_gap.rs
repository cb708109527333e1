//! Measuring a mixed state in anything but its eigenbasis inflates the
//! entropy of the outcome distribution above the spectral entropy.

use envariance::channels::haar_unitary;
use envariance::states::{
    maximally_mixed, random_density, shannon_entropy_observable, von_neumann_entropy,
};
use envariance::tensor::herm_eig;
use rand::SeedableRng;

fn main() -> envariance::Result<()> {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(17);
    let n = 4;

    let rho = random_density(&mut rng, n);
    let spectral = von_neumann_entropy(&rho);
    println!("spectral entropy: {spectral:.6} nats (max {:.6})", (n as f64).ln());

    let (_, eigenbasis) = herm_eig(rho.matrix())?;
    println!(
        "measured in the eigenbasis: {:.6}",
        shannon_entropy_observable(&rho, &eigenbasis)?
    );

    let mut worst = spectral;
    for _ in 0..200 {
        let basis = haar_unitary(&mut rng, n);
        worst = worst.max(shannon_entropy_observable(&rho, &basis)?);
    }
    println!("largest over 200 random bases: {worst:.6}");

    // the uniform state is basis independent: every measurement reads ln N
    let uniform = maximally_mixed(n);
    let basis = haar_unitary(&mut rng, n);
    println!(
        "uniform state in a random basis: {:.6} = ln {n}",
        shannon_entropy_observable(&uniform, &basis)?
    );
    Ok(())
}
