//! The purity ceiling extends to convex mixtures: when the components share
//! Schmidt bases and phases, the mixture's two-sided distance stays below
//! the weighted average of the per-component ceilings.

use envariance::channels::{counterpart_channel, haar_unitary, random_mixed_unitary_channel, random_probabilities};
use envariance::metrics::{mixture_bound, purity_bound, trace_distance};
use envariance::states::{q_purity, DensityMatrix, SchmidtForm};
use rand::{Rng, SeedableRng};

fn main() -> envariance::Result<()> {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(29);
    let n = 3;
    let parts = 3;

    let alpha_basis = haar_unitary(&mut rng, n);
    let beta_basis = haar_unitary(&mut rng, n);
    let phases: Vec<f64> = (0..n)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();

    let weights = random_probabilities(&mut rng, parts);
    let mut qs = Vec::new();
    let mut components = Vec::new();
    let mut forms = Vec::new();
    for i in 0..parts {
        let mut coeffs: Vec<f64> = random_probabilities(&mut rng, n)
            .iter()
            .map(|p| p.sqrt())
            .collect();
        coeffs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let form = SchmidtForm::new(
            coeffs,
            phases.clone(),
            alpha_basis.clone(),
            beta_basis.clone(),
        )?;
        let q = q_purity(&form, n)?.q;
        println!(
            "component {i}: weight {:.4}, Q = {q:.4}, ceiling = {:.4}",
            weights[i],
            purity_bound(q)
        );
        qs.push(q);
        components.push(form.reassemble()?.density());
        forms.push(form);
    }

    let mix = DensityMatrix::mixture(&weights, &components)?;
    let ch = random_mixed_unitary_channel(&mut rng, n, 3);
    // the components share bases and phases, so one counterpart serves all
    let counterpart = counterpart_channel(&ch, &forms[0].maximally_entangled_form())?;
    let dims = forms[0].dims();
    let via_alpha = ch.apply_on_alpha(mix.matrix(), dims)?;
    let via_beta = counterpart.apply_on_beta(mix.matrix(), dims)?;
    let d = trace_distance(&via_alpha, &via_beta)?;
    let ceiling = mixture_bound(&weights, &qs)?;
    println!();
    println!("mixture distance: {d:.6}");
    println!("averaged ceiling: {ceiling:.6}");
    Ok(())
}
