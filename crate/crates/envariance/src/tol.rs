//! Central numerical tolerances.
//!
//! Everything downstream is built from products of unit-norm factors, so
//! legitimate roundoff stays within a few hundred machine epsilons even at
//! the largest supported dimension (composite dim 4096). The constants here
//! are deliberately far above that floor and far below any physically
//! meaningful scale.

/// Max-entry deviation under which a matrix is treated as Hermitian.
pub const HERMITICITY: f64 = 1e-10;

/// Max-entry deviation under which a matrix is treated as unitary.
pub const UNITARITY: f64 = 1e-10;

/// Allowed deviation of state norms and density-matrix traces from 1.
pub const NORMALIZATION: f64 = 1e-10;

/// Eigenvalues in [-PSD_CLIP, 0) are clipped to 0; anything below is an
/// error. Trace-one matrices at these dimensions cannot accumulate larger
/// legitimate negative eigenvalues.
pub const PSD_CLIP: f64 = 1e-12;

/// Schmidt coefficients above this count toward the rank.
pub const RANK_CUTOFF: f64 = 1e-12;

/// Tolerance for the cached trace-preserving/unital channel flags. Looser
/// than the kernel tolerances to absorb K-fold summation error.
pub const CHANNEL_FLAG: f64 = 1e-9;

/// Default tolerance for vector/matrix identity checks (counterpart
/// identity, reassembly, appendix identities).
pub const IDENTITY_CHECK: f64 = 1e-9;

/// Tolerance for envariance checks.
pub const ENVARIANCE: f64 = 1e-10;

/// A split's maximally-symmetric remainder is flagged absent when Q is at or
/// below this.
pub const ABSENT_COMPONENT: f64 = 1e-12;

/// Campaign margins below -VIOLATION_MARGIN are violations; negative margins
/// above it are logged as numerical warnings. 100x the working tolerance.
pub const VIOLATION_MARGIN: f64 = 1e-7;
