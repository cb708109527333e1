//! Verification campaigns: randomized sweeps and fixed constructions that
//! certify the distance bound, the counterpart identities, the entropy
//! inequality, and the envariance properties, with machine-readable reports.
//!
//! Every trial derives its own RNG seed from the master seed and the trial
//! index, so reports are reproducible and individual trials can be replayed
//! in isolation (the per-trial seed is part of each record).

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::channels::{
    check_envariance, compose, counterpart_channel, counterpart_elements,
    counterpart_identity_residual, envariance_deviation, envariant_partner, envariant_phase_pair,
    generalized_measurement_example, haar_unitary, premeasurement_channel,
    random_mixed_unitary_channel, random_nonunital_channel, random_probabilities,
    unitary_channel, CounterpartPhase, KrausChannel,
};
use crate::metrics::{evaluate_bound, fidelity, mixture_bound, trace_distance};
use crate::states::{
    maximally_mixed, omega_split, q_purity, random_density, random_schmidt_form,
    schmidt_decompose, shannon_entropy_observable, von_neumann_entropy, BipartitePureState,
    DensityMatrix, SchmidtForm,
};
use crate::tensor::{
    cyclic_shift, fourier_basis, inner, outer, partial_trace, BipartiteDims, ComplexMatrix,
    Subsystem, C64,
};
use crate::{tol, Error, Result};

/// The verification suites exposed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[clap(rename_all = "kebab-case")]
pub enum Suite {
    /// Randomized states and unital channels against the purity ceiling.
    BoundSweep,
    /// Unital channels fix I/N; a non-unital control moves it.
    Invariance,
    /// The two fixed constructions with exactly known distances.
    Counterexamples,
    /// Spectral entropy never exceeds any observable entropy.
    Entropy,
    /// Coefficient, split, and counterpart identities.
    Appendix,
    /// Envariant pairs leave states invariant; controls do not.
    Envariance,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::BoundSweep => "bound-sweep",
            Suite::Invariance => "invariance",
            Suite::Counterexamples => "counterexamples",
            Suite::Entropy => "entropy",
            Suite::Appendix => "appendix",
            Suite::Envariance => "envariance",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bound-sweep" => Ok(Suite::BoundSweep),
            "invariance" => Ok(Suite::Invariance),
            "counterexamples" => Ok(Suite::Counterexamples),
            "entropy" => Ok(Suite::Entropy),
            "appendix" => Ok(Suite::Appendix),
            "envariance" => Ok(Suite::Envariance),
            other => Err(Error::InvalidConfig(format!("unknown suite '{other}'"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[clap(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidConfig(format!("unknown format '{other}'"))),
        }
    }
}

/// Validated campaign parameters. `out_path` of `None` means stdout.
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub suite: Suite,
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub out_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl CampaignConfig {
    pub const DEFAULT_N_MIN: usize = 2;
    pub const DEFAULT_N_MAX: usize = 6;
    pub const DEFAULT_TRIALS: usize = 1000;
    pub const DEFAULT_SEED: u64 = 42;
    pub const DEFAULT_TOL: f64 = 1e-9;

    pub fn new(
        suite: Suite,
        n_min: usize,
        n_max: usize,
        trials: usize,
        seed: u64,
        tol: f64,
        format: OutputFormat,
    ) -> Result<Self> {
        if n_min < 2 {
            return Err(Error::InvalidConfig(format!(
                "n-min must be at least 2, got {n_min}"
            )));
        }
        if n_max < n_min {
            return Err(Error::InvalidConfig(format!(
                "n-max ({n_max}) must not be below n-min ({n_min})"
            )));
        }
        if n_max > 64 {
            return Err(Error::InvalidConfig(format!(
                "n-max must be at most 64, got {n_max}"
            )));
        }
        if trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tol must be a positive finite number, got {tol}"
            )));
        }
        Ok(Self {
            suite,
            n_min,
            n_max,
            trials,
            seed,
            tol,
            out_path: None,
            format,
        })
    }

    pub fn with_defaults(suite: Suite) -> Self {
        Self {
            suite,
            n_min: Self::DEFAULT_N_MIN,
            n_max: Self::DEFAULT_N_MAX,
            trials: Self::DEFAULT_TRIALS,
            seed: Self::DEFAULT_SEED,
            tol: Self::DEFAULT_TOL,
            out_path: None,
            format: OutputFormat::Csv,
        }
    }
}

/// What acted on the alpha side in a sweep trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    Unitary,
    Premeasurement,
    MixedUnitary,
    Composed,
}

impl ChannelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelKind::Unitary => "unitary",
            ChannelKind::Premeasurement => "premeasurement",
            ChannelKind::MixedUnitary => "mixed-unitary",
            ChannelKind::Composed => "composed",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One sweep trial: everything needed to judge and replay it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundRecord {
    pub trial: usize,
    pub n: usize,
    pub q: f64,
    pub channel_kind: ChannelKind,
    pub d_alpha: f64,
    pub d_alphabeta: f64,
    pub bound: f64,
    pub margin_ab: f64,
    pub margin_a: f64,
    pub beta_trace: f64,
    pub seed: u64,
}

/// One named scalar comparison in a non-sweep suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub n: usize,
    pub value: f64,
    pub reference: f64,
    pub delta: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// value must match reference within `tolerance`.
    fn close(check: &str, n: usize, value: f64, reference: f64, tolerance: f64) -> Self {
        let delta = value - reference;
        Self {
            check: check.to_string(),
            n,
            value,
            reference,
            delta,
            pass: delta.abs() <= tolerance,
        }
    }

    /// value must not be below reference by more than `slack`.
    fn at_least(check: &str, n: usize, value: f64, reference: f64, slack: f64) -> Self {
        let delta = value - reference;
        Self {
            check: check.to_string(),
            n,
            value,
            reference,
            delta,
            pass: delta >= -slack,
        }
    }
}

/// Full result of one campaign.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub violations: usize,
    pub warnings: usize,
    pub bound_records: Vec<BoundRecord>,
    pub check_records: Vec<CheckRecord>,
    pub summary: String,
}

impl SuiteReport {
    fn finish(mut self) -> Self {
        self.checks = self.bound_records.len() + self.check_records.len();
        self.violations += self.check_records.iter().filter(|c| !c.pass).count();
        self.summary = format!(
            "{}: {} checks, {} violations, {} warnings",
            self.suite, self.checks, self.violations, self.warnings
        );
        self
    }

    fn empty(suite: Suite) -> Self {
        Self {
            suite,
            checks: 0,
            violations: 0,
            warnings: 0,
            bound_records: Vec::new(),
            check_records: Vec::new(),
            summary: String::new(),
        }
    }
}

/// Stateless mix of the master seed and the trial index (splitmix64 core),
/// so per-trial seeds are order-independent.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    let mut z = master
        .wrapping_add((trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs the configured suite to completion and returns its report.
pub fn run_suite(config: &CampaignConfig) -> Result<SuiteReport> {
    match config.suite {
        Suite::BoundSweep => run_bound_sweep(config),
        Suite::Invariance => run_invariance(config),
        Suite::Counterexamples => run_counterexamples(config),
        Suite::Entropy => run_entropy(config),
        Suite::Appendix => run_appendix(config),
        Suite::Envariance => run_envariance(config),
    }
}

const KINDS: [ChannelKind; 4] = [
    ChannelKind::Unitary,
    ChannelKind::Premeasurement,
    ChannelKind::MixedUnitary,
    ChannelKind::Composed,
];

fn sample_channel(rng: &mut ChaCha12Rng, n: usize, kind: ChannelKind) -> KrausChannel {
    match kind {
        ChannelKind::Unitary => unitary_channel(&haar_unitary(rng, n)).expect("haar is unitary"),
        ChannelKind::Premeasurement => {
            premeasurement_channel(&haar_unitary(rng, n)).expect("haar is unitary")
        }
        ChannelKind::MixedUnitary => {
            let k = rng.random_range(2..=6);
            random_mixed_unitary_channel(rng, n, k)
        }
        ChannelKind::Composed => {
            let pre = premeasurement_channel(&haar_unitary(rng, n)).expect("haar is unitary");
            let rot = unitary_channel(&haar_unitary(rng, n)).expect("haar is unitary");
            compose(&pre, &rot).expect("matching dimensions")
        }
    }
}

/// Schmidt form with coefficients interpolated between flat (t = 0) and
/// pure (t = 1), random phases, and Haar bases. Walking t across [0, 1]
/// walks Q across its full range [0, sqrt(2 - 2/sqrt(n))].
fn q_targeted_form(rng: &mut ChaCha12Rng, n: usize, t: f64) -> SchmidtForm {
    let flat = 1.0 / (n as f64).sqrt();
    let mut coeffs: Vec<f64> = (0..n)
        .map(|j| (1.0 - t) * flat + if j == 0 { t } else { 0.0 })
        .collect();
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    for c in coeffs.iter_mut() {
        *c /= norm;
    }
    let phases: Vec<f64> = (0..n)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    SchmidtForm::new(coeffs, phases, haar_unitary(rng, n), haar_unitary(rng, n))
        .expect("interpolated coefficients are normalized and descending")
}

fn run_bound_sweep(config: &CampaignConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::empty(Suite::BoundSweep);
    let span = config.n_max - config.n_min + 1;
    for trial in 0..config.trials {
        let seed = trial_seed(config.seed, trial);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let n = config.n_min + rng.random_range(0..span);
        // deterministic cycling keeps coverage of every (kind, sampler, t)
        // combination independent of the random draws
        let kind = KINDS[trial % 4];
        let q_targeted = (trial / 4) % 2 == 0;
        let sf = if q_targeted {
            let t = ((trial / 8) % 11) as f64 / 10.0;
            q_targeted_form(&mut rng, n, t)
        } else {
            random_schmidt_form(&mut rng, n, n)
        };
        let ch = sample_channel(&mut rng, n, kind);
        let ev = evaluate_bound(&sf, &ch, n)?;
        let worst = ev.margin_ab.min(ev.margin_a);
        if worst < -tol::VIOLATION_MARGIN {
            report.violations += 1;
        } else if worst < 0.0 {
            report.warnings += 1;
        }
        report.bound_records.push(BoundRecord {
            trial,
            n,
            q: ev.q,
            channel_kind: kind,
            d_alpha: ev.d_alpha,
            d_alphabeta: ev.d_alphabeta,
            bound: ev.bound,
            margin_ab: ev.margin_ab,
            margin_a: ev.margin_a,
            beta_trace: ev.beta_trace,
            seed,
        });
    }
    Ok(report.finish())
}

fn run_invariance(config: &CampaignConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::empty(Suite::Invariance);
    let span = config.n_max - config.n_min + 1;
    for trial in 0..config.trials {
        let seed = trial_seed(config.seed, trial);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let n = config.n_min + rng.random_range(0..span);
        let kind = KINDS[trial % 4];
        let ch = sample_channel(&mut rng, n, kind);
        let fixed = maximally_mixed(n);
        let moved = ch.apply(&fixed)?;
        let d = trace_distance(moved.matrix(), fixed.matrix())?;
        report.check_records.push(CheckRecord::close(
            &format!("unital-{}-fixes-uniform-state", kind),
            n,
            d,
            0.0,
            config.tol,
        ));
    }
    // negative control: a trace-preserving but non-unital channel moves the
    // qubit uniform state by exactly one half
    let control = generalized_measurement_example();
    let fixed = maximally_mixed(2);
    let moved = control.apply(&fixed)?;
    let d = trace_distance(moved.matrix(), fixed.matrix())?;
    report.check_records.push(CheckRecord::close(
        "nonunital-control-moves-uniform-state",
        2,
        d,
        0.5,
        1e-10,
    ));
    // and a random non-unital channel does not pass the invariance check
    let mut rng = ChaCha12Rng::seed_from_u64(trial_seed(config.seed, config.trials));
    let n = config.n_min;
    let nonunital = random_nonunital_channel(&mut rng, n, 2);
    let fixed = maximally_mixed(n);
    let moved = nonunital.apply(&fixed)?;
    let d = trace_distance(moved.matrix(), fixed.matrix())?;
    report.check_records.push(CheckRecord::at_least(
        "nonunital-random-moves-uniform-state",
        n,
        d,
        1e-6,
        0.0,
    ));
    Ok(report.finish())
}

fn run_counterexamples(config: &CampaignConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::empty(Suite::Counterexamples);
    let mut swap_distances = Vec::new();
    let mut fourier_distances = Vec::new();
    for n in config.n_min..=config.n_max {
        // construction 1: a basis shift sends a product state's reduced
        // state to an orthogonal one, so D_alpha = 1 while Q stays at the
        // pure-state value and the ceiling stays above 1
        let mut amplitudes = vec![C64::ZERO; n * n];
        amplitudes[0] = C64::ONE;
        let psi = BipartitePureState::new(amplitudes, BipartiteDims { n_alpha: n, n_beta: n })?;
        let sf = schmidt_decompose(&psi);
        let shift = unitary_channel(&cyclic_shift(n))?;
        let ev = evaluate_bound(&sf, &shift, n)?;
        report.check_records.push(CheckRecord::close(
            "shift-moves-product-reduced-state-fully",
            n,
            ev.d_alpha,
            1.0,
            config.tol,
        ));
        let q_pure = (2.0 - 2.0 / (n as f64).sqrt()).sqrt();
        report.check_records.push(CheckRecord::close(
            "shift-q-at-pure-state-value",
            n,
            ev.q,
            q_pure,
            config.tol,
        ));
        report.check_records.push(CheckRecord::at_least(
            "shift-within-ceiling",
            n,
            ev.margin_ab,
            0.0,
            tol::VIOLATION_MARGIN,
        ));
        report.check_records.push(CheckRecord::at_least(
            "shift-global-at-least-local",
            n,
            ev.margin_a,
            0.0,
            tol::VIOLATION_MARGIN,
        ));
        swap_distances.push(ev.d_alpha);

        // construction 2: premeasuring |0><0| in the Fourier basis yields
        // exactly the uniform state: fidelity^2 = 1/n yet D = 1 - 1/n, so
        // high distance pairs with substantial fidelity
        let pure = DensityMatrix::new(outer(
            &{
                let mut v = vec![C64::ZERO; n];
                v[0] = C64::ONE;
                v
            },
            &{
                let mut v = vec![C64::ZERO; n];
                v[0] = C64::ONE;
                v
            },
        ))?;
        let premeasure = premeasurement_channel(&fourier_basis(n))?;
        let sigma = premeasure.apply(&pure)?;
        let nf = n as f64;
        let uniform = maximally_mixed(n);
        report.check_records.push(CheckRecord::close(
            "fourier-premeasurement-yields-uniform-state",
            n,
            sigma.matrix().max_abs_diff(uniform.matrix()),
            0.0,
            config.tol,
        ));
        let d = trace_distance(pure.matrix(), sigma.matrix())?;
        report.check_records.push(CheckRecord::close(
            "fourier-distance-matches-closed-form",
            n,
            d,
            1.0 - 1.0 / nf,
            config.tol,
        ));
        let f = fidelity(pure.matrix(), sigma.matrix())?;
        report.check_records.push(CheckRecord::close(
            "fourier-fidelity-squared-matches-closed-form",
            n,
            f * f,
            1.0 / nf,
            config.tol,
        ));
        fourier_distances.push(d);
    }
    // both families grow more distinguishable with dimension
    for (i, w) in fourier_distances.windows(2).enumerate() {
        let n = config.n_min + i + 1;
        report.check_records.push(CheckRecord::at_least(
            "fourier-distance-grows-with-n",
            n,
            w[1] - w[0],
            0.0,
            1e-12,
        ));
    }
    for (i, w) in swap_distances.windows(2).enumerate() {
        let n = config.n_min + i + 1;
        report.check_records.push(CheckRecord::close(
            "shift-distance-stays-saturated",
            n,
            w[1] - w[0],
            0.0,
            config.tol,
        ));
    }
    Ok(report.finish())
}

fn run_entropy(config: &CampaignConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::empty(Suite::Entropy);
    let span = config.n_max - config.n_min + 1;
    for trial in 0..config.trials {
        let seed = trial_seed(config.seed, trial);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let n = config.n_min + rng.random_range(0..span);
        let rho = random_density(&mut rng, n);
        let basis = haar_unitary(&mut rng, n);
        let s = von_neumann_entropy(&rho);
        let h = shannon_entropy_observable(&rho, &basis)?;
        report.check_records.push(CheckRecord::at_least(
            "observable-entropy-dominates-spectral",
            n,
            h - s,
            0.0,
            config.tol,
        ));
    }
    // equality case: measuring in the eigenbasis recovers the spectral entropy
    let mut rng = ChaCha12Rng::seed_from_u64(trial_seed(config.seed, config.trials));
    for n in config.n_min..=config.n_max {
        let rho = random_density(&mut rng, n);
        let (_, vectors) = crate::tensor::herm_eig(rho.matrix())?;
        let s = von_neumann_entropy(&rho);
        let h = shannon_entropy_observable(&rho, &vectors)?;
        report.check_records.push(CheckRecord::close(
            "eigenbasis-measurement-attains-spectral-entropy",
            n,
            h,
            s,
            config.tol,
        ));
    }
    // the qubit uniform state reads ln 2 in every basis
    for i in 0..100 {
        let basis = haar_unitary(&mut rng, 2);
        let h = shannon_entropy_observable(&maximally_mixed(2), &basis)?;
        let _ = i;
        report.check_records.push(CheckRecord::close(
            "uniform-qubit-reads-ln2-in-any-basis",
            2,
            h,
            2.0_f64.ln(),
            config.tol,
        ));
    }
    // purification symmetry: both reduced states share the spectrum
    for n in config.n_min..=config.n_max {
        let psi = crate::states::random_pure_bipartite(&mut rng, n, n);
        let rho = psi.density();
        let a = partial_trace(rho.matrix(), psi.dims(), Subsystem::Alpha)?;
        let b = partial_trace(rho.matrix(), psi.dims(), Subsystem::Beta)?;
        let sa = von_neumann_entropy(&DensityMatrix::new(a)?);
        let sb = von_neumann_entropy(&DensityMatrix::new(b)?);
        report.check_records.push(CheckRecord::close(
            "purification-reduced-entropies-match",
            n,
            sa,
            sb,
            config.tol,
        ));
    }
    Ok(report.finish())
}

fn run_appendix(config: &CampaignConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::empty(Suite::Appendix);
    let span = config.n_max - config.n_min + 1;
    for trial in 0..config.trials {
        let seed = trial_seed(config.seed, trial);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let n = config.n_min + rng.random_range(0..span);
        let sf = random_schmidt_form(&mut rng, n, n);
        let pm = q_purity(&sf, n)?;
        let nf = n as f64;

        // coefficient identities of the deviation vector
        let sum_d: f64 = pm.d.iter().sum();
        report.check_records.push(CheckRecord::close(
            "deviation-sum-is-minus-half-sqrtn-qsq",
            n,
            sum_d,
            -nf.sqrt() / 2.0 * pm.q * pm.q,
            config.tol,
        ));
        let sum_d2: f64 = pm.d.iter().map(|x| x * x).sum();
        report.check_records.push(CheckRecord::close(
            "deviation-square-sum-is-qsq",
            n,
            sum_d2,
            pm.q * pm.q,
            config.tol,
        ));
        report.check_records.push(CheckRecord::at_least(
            "q-within-range",
            n,
            (2.0 - 2.0 / nf.sqrt()).sqrt() - pm.q,
            0.0,
            config.tol,
        ));

        // split identities: overlap and exact reassembly
        let split = omega_split(&sf, n)?;
        let omega = sf.reassemble()?;
        if let Some(omega2) = &split.omega2 {
            let o1 = split.omega1.amplitudes();
            let o2 = omega2.amplitudes();
            let ov = inner(o1, o2);
            report.check_records.push(CheckRecord::close(
                "split-overlap-is-minus-half-q",
                n,
                ov.re,
                -split.q / 2.0,
                config.tol,
            ));
            report.check_records.push(CheckRecord::close(
                "split-overlap-is-real",
                n,
                ov.im,
                0.0,
                config.tol,
            ));
            let mut err2 = 0.0;
            for (i, &a) in omega.amplitudes().iter().enumerate() {
                let s = o1[i] + o2[i] * split.q;
                err2 += (a - s).norm_sqr();
            }
            report.check_records.push(CheckRecord::close(
                "split-reassembles-the-state",
                n,
                err2.sqrt(),
                0.0,
                config.tol,
            ));
            // the four component projectors multiply back into each other,
            // with the overlap -Q/2 in the mixed self-products
            let q = split.q;
            let r11 = outer(o1, o1);
            let r12 = outer(o1, o2);
            let r21 = outer(o2, o1);
            let r22 = outer(o2, o2);
            let worst = [
                (&r11 * &r11).max_abs_diff(&r11),
                (&r22 * &r22).max_abs_diff(&r22),
                (&r12 * &r21).max_abs_diff(&r11),
                (&r21 * &r12).max_abs_diff(&r22),
                (&r12 * &r12).max_abs_diff(&r12.scaled_re(-q / 2.0)),
                (&r21 * &r21).max_abs_diff(&r21.scaled_re(-q / 2.0)),
            ]
            .into_iter()
            .fold(0.0_f64, f64::max);
            report.check_records.push(CheckRecord::close(
                "component-projectors-multiply-consistently",
                n,
                worst,
                0.0,
                config.tol,
            ));
        }
        // overlap with the maximally entangled part gives the fidelity
        // its closed form
        let f_direct = inner(split.omega1.amplitudes(), omega.amplitudes()).norm();
        let f_closed = (1.0 - split.q * split.q + 0.25 * split.q.powi(4))
            .max(0.0)
            .sqrt();
        report.check_records.push(CheckRecord::close(
            "fidelity-to-partner-has-closed-form",
            n,
            f_direct,
            f_closed,
            config.tol,
        ));

        // proof chain: the global distance is pinched by twice the distance
        // to the maximally entangled partner, which has the closed form
        // 2 sqrt(1 - (1 - Q^2/2)^2)
        let kind = KINDS[trial % 4];
        let ch = sample_channel(&mut rng, n, kind);
        let ev = evaluate_bound(&sf, &ch, n)?;
        let rho_omega = omega.density();
        let rho_omega1 = split.omega1.density();
        let d_pure = trace_distance(rho_omega.matrix(), rho_omega1.matrix())?;
        report.check_records.push(CheckRecord::close(
            "distance-to-partner-has-closed-form",
            n,
            d_pure,
            (1.0 - (1.0 - split.q * split.q / 2.0).powi(2)).max(0.0).sqrt(),
            1e-7,
        ));
        // the general matrix fidelity reproduces the overlap route at the
        // precision its rank-deficient square root allows
        let f_matrix = fidelity(rho_omega1.matrix(), rho_omega.matrix())?;
        report.check_records.push(CheckRecord::close(
            "general-fidelity-agrees-on-pure-states",
            n,
            f_matrix,
            f_direct,
            1e-7,
        ));
        report.check_records.push(CheckRecord::at_least(
            "chain-global-distance-below-twice-partner-distance",
            n,
            2.0 * d_pure - ev.d_alphabeta,
            0.0,
            tol::VIOLATION_MARGIN,
        ));
        // middle link: on the partner state itself the two sides agree
        let counter = counterpart_channel(&ch, &split.omega1_form)?;
        let dims = split.omega1.dims();
        let lhs = ch.apply_on_alpha(rho_omega1.matrix(), dims)?;
        let rhs = counter.apply_on_beta(rho_omega1.matrix(), dims)?;
        report.check_records.push(CheckRecord::close(
            "chain-middle-link-vanishes",
            n,
            trace_distance(&lhs, &rhs)?,
            0.0,
            config.tol,
        ));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(trial_seed(config.seed, config.trials));
    for n in config.n_min..=config.n_max {
        // counterpart phase conventions, compared over a phased flat form
        let c = 1.0 / (n as f64).sqrt();
        let phases: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.1..std::f64::consts::TAU))
            .collect();
        let sf = SchmidtForm::new(
            vec![c; n],
            phases,
            haar_unitary(&mut rng, n),
            haar_unitary(&mut rng, n),
        )?;
        let ch = sample_channel(&mut rng, n, KINDS[n % 4]);
        let conj = counterpart_elements(&ch, &sf, CounterpartPhase::Conjugate)?;
        report.check_records.push(CheckRecord::close(
            "conjugate-phase-convention-satisfies-identity",
            n,
            counterpart_identity_residual(&ch, &conj, &sf)?,
            0.0,
            config.tol,
        ));
        let lit = counterpart_elements(&ch, &sf, CounterpartPhase::Literal)?;
        report.check_records.push(CheckRecord::at_least(
            "literal-phase-convention-breaks-identity",
            n,
            counterpart_identity_residual(&ch, &lit, &sf)?,
            1e-4,
            0.0,
        ));

        // unitality transports to trace preservation and back
        let unital = random_mixed_unitary_channel(&mut rng, n, 3);
        let counter = counterpart_channel(&unital, &sf)?;
        report.check_records.push(CheckRecord::close(
            "counterpart-of-unital-is-trace-preserving",
            n,
            counter.trace_preserving_deviation(),
            0.0,
            config.tol,
        ));
        let nonunital = random_nonunital_channel(&mut rng, n, 2);
        let elements = counterpart_elements(&nonunital, &sf, CounterpartPhase::Conjugate)?;
        let as_set = KrausChannel::new(elements)?;
        report.check_records.push(CheckRecord::at_least(
            "counterpart-of-nonunital-is-not-trace-preserving",
            n,
            as_set.trace_preserving_deviation(),
            1e-4,
            0.0,
        ));

        // degenerate split: flat coefficients leave no second component
        let flat = SchmidtForm::new(
            vec![c; n],
            vec![0.0; n],
            haar_unitary(&mut rng, n),
            haar_unitary(&mut rng, n),
        )?;
        let split = omega_split(&flat, n)?;
        report.check_records.push(CheckRecord::close(
            "flat-state-has-no-second-component",
            n,
            if split.omega2.is_none() { 0.0 } else { 1.0 },
            0.0,
            0.5,
        ));

        // mixtures sharing Schmidt bases stay below the averaged ceiling
        let parts = 2 + (n % 2);
        let weights = random_probabilities(&mut rng, parts);
        let alpha_basis = haar_unitary(&mut rng, n);
        let beta_basis = haar_unitary(&mut rng, n);
        let shared_phases: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        let mut qs = Vec::with_capacity(parts);
        let mut components = Vec::with_capacity(parts);
        let mut forms = Vec::with_capacity(parts);
        for _ in 0..parts {
            let mut coeffs: Vec<f64> = random_probabilities(&mut rng, n)
                .iter()
                .map(|p| p.sqrt())
                .collect();
            coeffs.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let form = SchmidtForm::new(
                coeffs,
                shared_phases.clone(),
                alpha_basis.clone(),
                beta_basis.clone(),
            )?;
            qs.push(q_purity(&form, n)?.q);
            components.push(form.reassemble()?.density());
            forms.push(form);
        }
        let mix = DensityMatrix::mixture(&weights, &components)?;
        let ch = sample_channel(&mut rng, n, KINDS[(n + 1) % 4]);
        // one counterpart works for every component because they share
        // bases and phases
        let counter = counterpart_channel(&ch, &forms[0].maximally_entangled_form())?;
        let dims = forms[0].dims();
        let lhs = ch.apply_on_alpha(mix.matrix(), dims)?;
        let rhs = counter.apply_on_beta(mix.matrix(), dims)?;
        let d_mix = trace_distance(&lhs, &rhs)?;
        let ceiling = mixture_bound(&weights, &qs)?;
        report.check_records.push(CheckRecord::at_least(
            "mixture-stays-below-averaged-ceiling",
            n,
            ceiling - d_mix,
            0.0,
            tol::VIOLATION_MARGIN,
        ));
    }
    Ok(report.finish())
}

fn run_envariance(config: &CampaignConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::empty(Suite::Envariance);
    let span = config.n_max - config.n_min + 1;
    for trial in 0..config.trials {
        let seed = trial_seed(config.seed, trial);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let n = config.n_min + rng.random_range(0..span);
        let sf = random_schmidt_form(&mut rng, n, n);
        let lambdas: Vec<f64> = (0..sf.rank)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        let pair = envariant_phase_pair(&sf, &lambdas, sf.dims())?;
        let psi = sf.reassemble()?;
        report.check_records.push(CheckRecord::close(
            "phase-pair-leaves-state-invariant",
            n,
            envariance_deviation(&pair.u_alpha, &pair.u_beta, &psi)?,
            0.0,
            tol::ENVARIANCE,
        ));

        // on a maximally entangled form every unitary has a partner
        let c = 1.0 / (n as f64).sqrt();
        let phases: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        let flat = SchmidtForm::new(
            vec![c; n],
            phases,
            haar_unitary(&mut rng, n),
            haar_unitary(&mut rng, n),
        )?;
        let u = haar_unitary(&mut rng, n);
        let partner = envariant_partner(&u, &flat)?;
        let omega = flat.reassemble()?;
        report.check_records.push(CheckRecord::close(
            "haar-unitary-has-partner-on-flat-state",
            n,
            envariance_deviation(&u, &partner, &omega)?,
            0.0,
            tol::ENVARIANCE,
        ));
    }

    // fixed qubit cases around the shared Bell state
    let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
    let nu = BipartitePureState::new(
        vec![
            C64::ZERO,
            C64::new(sqrt_half, 0.0),
            C64::new(sqrt_half, 0.0),
            C64::ZERO,
        ],
        BipartiteDims { n_alpha: 2, n_beta: 2 },
    )?;
    let singlet = BipartitePureState::new(
        vec![
            C64::ZERO,
            C64::new(sqrt_half, 0.0),
            C64::new(-sqrt_half, 0.0),
            C64::ZERO,
        ],
        BipartiteDims { n_alpha: 2, n_beta: 2 },
    )?;
    let mut rng = ChaCha12Rng::seed_from_u64(trial_seed(config.seed, config.trials));
    let rotation = |theta: f64, axis: [f64; 3]| {
        let (co, si) = (theta.cos(), theta.sin());
        let i = C64::I;
        ComplexMatrix::from_entries(
            2,
            2,
            vec![
                C64::new(co, 0.0) + i * si * axis[2],
                i * si * C64::new(axis[0], -axis[1]),
                i * si * C64::new(axis[0], axis[1]),
                C64::new(co, 0.0) - i * si * axis[2],
            ],
        )
        .expect("entry count matches")
    };
    for case in 0..10 {
        let theta = rng.random_range(0.1..1.4);
        let axis_angle = rng.random_range(0.0..std::f64::consts::TAU);
        let in_plane = rotation(theta, [axis_angle.cos(), axis_angle.sin(), 0.0]);
        // an equatorial rotation acts the same from either side, so it
        // pairs with its own adjoint
        let amp = nu.amplitude_matrix();
        let one_sided = (&(&in_plane * &amp) - &(&amp * &in_plane.transpose())).max_abs();
        report.check_records.push(CheckRecord::close(
            "equatorial-rotation-transfers-across-sides",
            2,
            one_sided,
            0.0,
            tol::ENVARIANCE,
        ));
        report.check_records.push(CheckRecord::close(
            "equatorial-rotation-pairs-with-adjoint",
            2,
            envariance_deviation(&in_plane, &in_plane.adjoint(), &nu)?,
            0.0,
            tol::ENVARIANCE,
        ));
        // a polar rotation pairs with itself instead
        let polar = rotation(theta, [0.0, 0.0, 1.0]);
        report.check_records.push(CheckRecord::close(
            "polar-rotation-pairs-with-itself",
            2,
            envariance_deviation(&polar, &polar, &nu)?,
            0.0,
            tol::ENVARIANCE,
        ));
        report.check_records.push(CheckRecord::at_least(
            "polar-rotation-does-not-pair-with-adjoint",
            2,
            envariance_deviation(&polar, &polar.adjoint(), &nu)?,
            1e-3,
            0.0,
        ));
        // the singlet absorbs the same det-normalized rotation on both sides
        let u = haar_unitary(&mut rng, 2);
        let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
        let u = u.scaled(det.sqrt().conj());
        report.check_records.push(CheckRecord::close(
            "singlet-absorbs-same-rotation-on-both-sides",
            2,
            envariance_deviation(&u, &u, &singlet)?,
            0.0,
            1e-9,
        ));
        let _ = case;
    }
    // control: a one-sided flip is not envariant
    let sx = ComplexMatrix::from_entries(2, 2, vec![C64::ZERO, C64::ONE, C64::ONE, C64::ZERO])?;
    let id = ComplexMatrix::identity(2);
    report.check_records.push(CheckRecord::at_least(
        "one-sided-flip-moves-the-state",
        2,
        envariance_deviation(&sx, &id, &nu)?,
        0.5,
        0.0,
    ));
    let chk = check_envariance(&sx, &sx, &nu, tol::ENVARIANCE)?;
    report.check_records.push(CheckRecord::close(
        "two-sided-flip-restores-the-state",
        2,
        if chk { 0.0 } else { 1.0 },
        0.0,
        0.5,
    ));
    Ok(report.finish())
}

const BOUND_HEADER: &str =
    "trial,n,q,channel_kind,d_alpha,d_alphabeta,bound,margin_ab,margin_a,beta_trace,seed";
const CHECK_HEADER: &str = "check,n,value,reference,delta,pass";

/// CSV report: sweep suites emit one row per trial under the bound header,
/// the other suites one row per named check. Floats use 17 significant
/// digits so values round-trip exactly.
pub fn emit_csv(report: &SuiteReport, out: &mut dyn Write) -> io::Result<()> {
    if !report.bound_records.is_empty() || report.suite == Suite::BoundSweep {
        writeln!(out, "{BOUND_HEADER}")?;
        for r in &report.bound_records {
            writeln!(
                out,
                "{},{},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
                r.trial,
                r.n,
                r.q,
                r.channel_kind,
                r.d_alpha,
                r.d_alphabeta,
                r.bound,
                r.margin_ab,
                r.margin_a,
                r.beta_trace,
                r.seed
            )?;
        }
    } else {
        writeln!(out, "{CHECK_HEADER}")?;
        for c in &report.check_records {
            writeln!(
                out,
                "{},{},{:.16e},{:.16e},{:.16e},{}",
                c.check, c.n, c.value, c.reference, c.delta, c.pass
            )?;
        }
    }
    Ok(())
}

/// JSON report: the full `SuiteReport` structure, pretty-printed.
pub fn emit_json(report: &SuiteReport, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, report)?;
    writeln!(out)
}

/// Writes the report in the configured format.
pub fn emit(report: &SuiteReport, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
    match format {
        OutputFormat::Csv => emit_csv(report, out),
        OutputFormat::Json => emit_json(report, out),
    }
}

/// Writes the report where the config points: `out_path`, or stdout.
pub fn emit_report(report: &SuiteReport, config: &CampaignConfig) -> Result<()> {
    match &config.out_path {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
            emit(report, config.format, &mut file).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(report, config.format, &mut lock)
                .and_then(|()| lock.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".to_string(),
                    source,
                })
        }
    }
}
