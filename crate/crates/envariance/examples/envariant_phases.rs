//! Phase transformations on one side of an entangled state can be undone
//! from the other side, and on maximally entangled states every unitary has
//! such a partner.

use envariance::channels::{envariance_deviation, envariant_partner, envariant_phase_pair, haar_unitary};
use envariance::states::{maximally_entangled, random_schmidt_form, schmidt_decompose};
use envariance::tensor::ComplexMatrix;
use rand::{Rng, SeedableRng};

fn main() -> envariance::Result<()> {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(23);

    let sf = random_schmidt_form(&mut rng, 3, 3);
    let psi = sf.reassemble()?;
    let lambdas: Vec<f64> = (0..sf.rank)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    let pair = envariant_phase_pair(&sf, &lambdas, sf.dims())?;

    let together = envariance_deviation(&pair.u_alpha, &pair.u_beta, &psi)?;
    let alone = envariance_deviation(&pair.u_alpha, &ComplexMatrix::identity(3), &psi)?;
    println!("phase pair on a rank-3 state:");
    println!("  applied together: deviation {together:.2e}");
    println!("  alpha side alone: deviation {alone:.2e}");

    // on a maximally entangled state the partner of an arbitrary unitary
    // exists, not just of phase transformations
    let omega = maximally_entangled(4, &[0.0; 4])?;
    let flat = schmidt_decompose(&omega);
    let u = haar_unitary(&mut rng, 4);
    let partner = envariant_partner(&u, &flat)?;
    let deviation = envariance_deviation(&u, &partner, &omega)?;
    println!("random unitary with its partner on a flat state: deviation {deviation:.2e}");

    // a skewed state admits no such partner
    let skewed = random_schmidt_form(&mut rng, 4, 4);
    match envariant_partner(&u, &skewed) {
        Err(e) => println!("same unitary on a skewed state: {e}"),
        Ok(_) => unreachable!("skewed states have no partner"),
    }
    Ok(())
}
