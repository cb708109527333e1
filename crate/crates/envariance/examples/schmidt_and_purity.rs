//! Schmidt decomposition of a random bipartite state, the purity measure Q,
//! and the split into a maximally entangled part plus remainder.

use envariance::states::{omega_split, q_purity, random_pure_bipartite, schmidt_decompose};
use envariance::tensor::inner;
use rand::SeedableRng;

fn main() -> envariance::Result<()> {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
    // a 4x2 state has Schmidt rank at most 2, leaving room for padding
    let psi = random_pure_bipartite(&mut rng, 4, 2);
    let sf = schmidt_decompose(&psi);

    println!("Schmidt rank: {}", sf.rank);
    print!("coefficients:");
    for c in &sf.coeffs {
        print!(" {c:.6}");
    }
    println!();

    let residual = sf
        .reassemble()?
        .amplitudes()
        .iter()
        .zip(psi.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0_f64, f64::max);
    println!("reassembly residual: {residual:.2e}");

    // Q depends on the padding dimension: padding with extra zero
    // coefficients moves the flat reference vector
    for n_padded in sf.rank..=4 {
        let pm = q_purity(&sf, n_padded)?;
        let ceiling = (2.0 - 2.0 / (n_padded as f64).sqrt()).sqrt();
        println!("N = {n_padded}: Q = {:.6} (pure-state value {ceiling:.6})", pm.q);
    }

    // the state splits as omega = omega1 + Q omega2 with a fixed overlap
    let split = omega_split(&sf, 4)?;
    let omega2 = split.omega2.expect("state is not maximally entangled");
    let overlap = inner(split.omega1.amplitudes(), omega2.amplitudes());
    println!(
        "split: Q = {:.6}, <omega1|omega2> = {:.6} (expected {:.6})",
        split.q,
        overlap.re,
        -split.q / 2.0
    );
    Ok(())
}
