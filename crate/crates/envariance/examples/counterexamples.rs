//! Two constructions showing that nothing like the purity ceiling survives
//! once the state is far from maximally entangled: local dynamics can be
//! maximal, and premeasurement can erase a pure state entirely.

use envariance::channels::{premeasurement_channel, unitary_channel};
use envariance::metrics::{evaluate_bound, fidelity, trace_distance};
use envariance::states::{maximally_mixed, schmidt_decompose, BipartitePureState, DensityMatrix};
use envariance::tensor::{cyclic_shift, fourier_basis, outer, BipartiteDims, C64};

fn main() -> envariance::Result<()> {
    println!("basis shift on a product state |0>|0>:");
    println!("n   D_alpha   Q         ceiling");
    for n in 2..=8 {
        let mut amplitudes = vec![C64::ZERO; n * n];
        amplitudes[0] = C64::ONE;
        let psi = BipartitePureState::new(
            amplitudes,
            BipartiteDims {
                n_alpha: n,
                n_beta: n,
            },
        )?;
        let sf = schmidt_decompose(&psi);
        let shift = unitary_channel(&cyclic_shift(n))?;
        let ev = evaluate_bound(&sf, &shift, n)?;
        println!("{n}   {:.6}  {:.6}  {:.6}", ev.d_alpha, ev.q, ev.bound);
    }
    println!("the reduced state moves as far as possible while the ceiling");
    println!("(evaluated at the product state's Q) stays comfortably above");
    println!();

    println!("premeasurement of |0><0| in the Fourier basis:");
    println!("n   D         F^2       1/n");
    for n in 2..=8 {
        let mut v = vec![C64::ZERO; n];
        v[0] = C64::ONE;
        let pure = DensityMatrix::new(outer(&v, &v))?;
        let premeasure = premeasurement_channel(&fourier_basis(n))?;
        let sigma = premeasure.apply(&pure)?;
        let residual = sigma.matrix().max_abs_diff(maximally_mixed(n).matrix());
        assert!(residual < 1e-12, "output is exactly uniform");
        let d = trace_distance(pure.matrix(), sigma.matrix())?;
        let f = fidelity(pure.matrix(), sigma.matrix())?;
        println!("{n}   {d:.6}  {:.6}  {:.6}", f * f, 1.0 / n as f64);
    }
    println!("the outcome is the uniform state: D climbs toward 1 with n,");
    println!("so no dimension-independent ceiling can hold here");
    Ok(())
}
