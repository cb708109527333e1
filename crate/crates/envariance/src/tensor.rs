//! Dense complex-matrix kernel.
//!
//! Owned row-major storage with the handful of operations the rest of the
//! crate needs: products, Kronecker products, partial traces, Hermitian
//! eigendecomposition, PSD square roots. The composite index convention is
//! fixed here once: the basis ket |alpha_i>|beta_j> lives at flat index
//! `i * n_beta + j`, which makes the partial trace over beta a contiguous
//! block trace.
//!
//! Eigendecomposition and the SVD used by the Schmidt machinery are backed
//! by nalgebra; conversion happens only at that boundary.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::{tol, Error, Result};

pub type C64 = Complex64;

/// Which factor of a bipartite space an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Alpha,
    Beta,
}

/// Subsystem dimensions (N, M) of a bipartite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteDims {
    pub n_alpha: usize,
    pub n_beta: usize,
}

impl BipartiteDims {
    pub fn new(n_alpha: usize, n_beta: usize) -> Result<Self> {
        if n_alpha == 0 || n_beta == 0 {
            return Err(Error::InvalidConfig(format!(
                "subsystem dimensions must be positive, got {n_alpha}x{n_beta}"
            )));
        }
        Ok(Self { n_alpha, n_beta })
    }

    pub fn total(&self) -> usize {
        self.n_alpha * self.n_beta
    }

    /// Flat composite index of |alpha_i>|beta_j>.
    pub fn flat(&self, i: usize, j: usize) -> usize {
        i * self.n_beta + j
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![C64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds from a row-major entry list.
    pub fn from_entries(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::EntryCountMismatch {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(*v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    /// Column j as a vector.
    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[C64]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scaled_re(&self, s: f64) -> Self {
        self.scaled(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-entry deviation from Hermitian symmetry.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// (M + M†)/2, exact Hermitian symmetry by construction.
    pub fn hermitized(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Max-entry norm of A†A - I.
    pub fn unitarity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let gram = &self.adjoint() * self;
        gram.max_abs_diff(&Self::identity(self.rows))
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub(crate) fn to_na(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_na(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Discrete Fourier basis: column k is (1/sqrt(n)) sum_j e^{2 pi i jk/n} |j>.
/// Unbiased with respect to the computational basis: every entry has
/// modulus 1/sqrt(n).
pub fn fourier_basis(n: usize) -> ComplexMatrix {
    let step = std::f64::consts::TAU / n as f64;
    let scale = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, n, |j, k| C64::from_polar(scale, step * (j * k) as f64))
}

/// Cyclic shift |j> -> |j + 1 mod n>, a permutation unitary with no fixed
/// basis vector.
pub fn cyclic_shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == (j + 1) % n {
            C64::ONE
        } else {
            C64::ZERO
        }
    })
}

/// Kronecker product; composite index is alpha-major: (i, j) -> i * b.rows + j
/// on the row side and likewise for columns.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let f = a[(ia, ja)];
            if f == C64::ZERO {
                continue;
            }
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    out[(ia * b.rows + ib, ja * b.cols + jb)] = f * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Reduced matrix of the kept subsystem. Preserves the trace.
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: BipartiteDims,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    let total = dims.total();
    if !m.is_square() || m.rows != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: m.rows,
        });
    }
    let (n, mm) = (dims.n_alpha, dims.n_beta);
    let out = match keep {
        Subsystem::Alpha => ComplexMatrix::from_fn(n, n, |i1, i2| {
            (0..mm).map(|j| m[(i1 * mm + j, i2 * mm + j)]).sum()
        }),
        Subsystem::Beta => ComplexMatrix::from_fn(mm, mm, |j1, j2| {
            (0..n).map(|i| m[(i * mm + j1, i * mm + j2)]).sum()
        }),
    };
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix. Returns eigenvalues in
/// descending order (stable ties) and the matching eigenvector columns.
/// The input is symmetrized before decomposition to suppress roundoff drift.
pub fn herm_eig(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows,
            cols: h.cols,
        });
    }
    let dev = h.hermiticity_deviation();
    if dev > tol::HERMITICITY {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = h.rows;
    let se = h.hermitized().to_na().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
    let values: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| se.eigenvectors[(i, order[j])]);
    Ok((values, vectors))
}

/// Positive square root of a Hermitian PSD matrix. Eigenvalues within the
/// clip window below zero are treated as zero; anything lower is an error.
pub fn psd_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (values, vectors) = herm_eig(h)?;
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < -tol::PSD_CLIP {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    let roots: Vec<f64> = values.iter().map(|&v| v.max(0.0).sqrt()).collect();
    let scaled = ComplexMatrix::from_fn(vectors.rows(), vectors.cols(), |i, j| {
        vectors[(i, j)] * roots[j]
    });
    Ok((&scaled * &vectors.adjoint()).hermitized())
}

/// |X| = sqrt(X†X).
pub fn matrix_abs(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows,
            cols: x.cols,
        });
    }
    psd_sqrt(&(&x.adjoint() * x))
}

/// Extends k orthonormal columns to a full orthonormal basis of C^n by
/// Gram-Schmidt against the standard basis, with reorthogonalization.
/// Deterministic: candidate vectors are tried in index order.
pub fn complete_orthonormal_basis(partial: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (n, k) = (partial.rows, partial.cols);
    if k > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: k,
        });
    }
    let mut cols: Vec<Vec<C64>> = (0..k).map(|j| partial.col(j)).collect();
    for (j, c) in cols.iter().enumerate() {
        let nrm = vec_norm(c);
        if (nrm - 1.0).abs() > tol::UNITARITY * 10.0 {
            return Err(Error::NotUnitary {
                deviation: (nrm - 1.0).abs(),
            });
        }
        let _ = j;
    }
    let mut cand = 0;
    while cols.len() < n {
        if cand >= n {
            return Err(Error::NotUnitary { deviation: 1.0 });
        }
        let mut v = vec![C64::ZERO; n];
        v[cand] = C64::ONE;
        cand += 1;
        for _pass in 0..2 {
            for c in &cols {
                let overlap = inner(c, &v);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= overlap * ci;
                }
            }
        }
        let nrm = vec_norm(&v);
        if nrm < 1e-6 {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= nrm;
        }
        cols.push(v);
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        out.set_col(j, c);
    }
    Ok(out)
}

/// <a|b> with the conjugate on the first argument.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// |a><b| as a matrix.
pub fn outer(a: &[C64], b: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
}
