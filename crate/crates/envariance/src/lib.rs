//! Machinery for bipartite quantum states and the verification of
//! distinguishability bounds on channels acting on one side of a purification.
//!
//! The library is organized in layers:
//!
//! * [`tensor`] - a small dense complex-matrix kernel: Kronecker products,
//!   partial traces, Hermitian eigendecomposition, PSD square roots.
//! * [`states`] - bipartite pure states, Schmidt decomposition, purification,
//!   the coefficient-deviation purity measure `Q`, and the split of a state
//!   into a maximally entangled part and an orthogonal remainder.
//! * [`channels`] - Kraus channels (unitary, premeasurement, mixed-unitary,
//!   composed), unitality and trace-preservation checks, envariant phase
//!   pairs, and the counterpart channel that reproduces the action of a
//!   channel on one subsystem by a channel on the other.
//! * [`metrics`] - trace distance, Helstrom projector, fidelity, and the
//!   purity-based bound `2*sqrt(1 - |1 - Q^2 + Q^4/4|)` together with its
//!   convex-mixture extension.
//! * [`verify`] - seeded verification campaigns over randomized states and
//!   channels, with CSV/JSON record emission and a thin CLI (`verify`).
//!
//! Every randomized routine takes an explicit RNG, and the campaign layer
//! derives one RNG per trial from a master seed, so identical configurations
//! produce byte-identical output files.
//!
//! # Example
//!
//! ```
//! use envariance::states::{random_pure_bipartite, schmidt_decompose, q_purity};
//! use rand::SeedableRng;
//!
//! let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
//! let psi = random_pure_bipartite(&mut rng, 4, 4);
//! let sf = schmidt_decompose(&psi);
//! let pm = q_purity(&sf, 4).unwrap();
//! assert!(pm.q >= 0.0 && pm.q <= (2.0 - 2.0 / 2.0_f64).sqrt() + 1e-9);
//! ```
//!
//! # Runnable examples
//!
//! Each major capability has a standalone example under `examples/`:
//!
//! * `schmidt_and_purity` - decomposition, padding, Q, and the omega split
//! * `envariant_phases` - phase pairs and partner unitaries that leave a
//!   state invariant
//! * `kraus_channels` - channel constructors, flags, and the fixed point of
//!   unital channels
//! * `counterpart_channel` - moving a channel across a maximally entangled
//!   state, including the phase-convention comparison
//! * `state_distinguishability` - trace distance, Helstrom projector,
//!   fidelity
//! * `entropy_gap` - von Neumann vs. observational entropy
//! * `bound_sweep` - randomized certification of the central bound
//! * `counterexamples` - high-Q cases where observable dynamics is unbounded
//! * `mixture_bound` - the convex-mixture form of the bound
//!
//! Run one with `cargo run --example schmidt_and_purity`, or the full
//! campaign CLI with `cargo run --bin verify -- bound-sweep --trials 1000`.

pub mod channels;
pub mod metrics;
pub mod states;
pub mod tensor;
pub mod tol;
pub mod verify;

use thiserror::Error;

/// Errors produced by constructors and operations across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("expected a {expected}-dimensional object, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{rows}x{cols} matrix needs {} entries, got {len}", rows * cols)]
    EntryCountMismatch { rows: usize, cols: usize, len: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("Kraus elements do not sum to a trace-preserving channel (deviation {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },

    #[error("channel is not unital (deviation {deviation:.3e})")]
    NotUnital { deviation: f64 },

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("padding {n_padded} is smaller than the Schmidt rank {rank}")]
    PaddingTooSmall { rank: usize, n_padded: usize },

    #[error("padding {n_padded} exceeds the subsystem dimension {dim}")]
    PaddingTooLarge { n_padded: usize, dim: usize },

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("state is not maximally entangled (coefficient deviation {deviation:.3e})")]
    NotMaximallyEntangled { deviation: f64 },

    #[error("counterpart identity violated (residual {residual:.3e})")]
    CounterpartIdentity { residual: f64 },

    #[error("channel has no Kraus elements")]
    EmptyChannel,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error at {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
