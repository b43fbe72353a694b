//! Dense complex matrix kernels.
//!
//! Everything in this crate is expressed as full `2^n x 2^n` operators so that
//! identities between pulse sequences can be checked exactly rather than on a
//! handful of states. Site 1 is the leftmost tensor factor, which makes it the
//! most significant bit of a basis index.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use faer::{Mat, MatRef, Side};
pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest operator dimension `kron` will produce.
pub const MAX_DIM: usize = 1 << 14;

/// Tolerance on `||U^dagger U - I||` accepted by [`Unitary::new`].
pub const UNITARITY_TOL: f64 = 1e-10;

/// Tolerance on the largest entry of `H - H^dagger` for exponentiation.
pub const HERMITICITY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

// Below this size the naive triple loop beats the conversion into faer.
const NAIVE_MATMUL_DIM: usize = 16;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, rejecting non-square or non-finite input.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::NotSquare {
                dim,
                len: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let data: Vec<_> = rows.iter().flatten().copied().collect();
        Self::new(dim, data)
    }

    pub(crate) fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * dim + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub(crate) fn add_at(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] += value;
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - self^dagger`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim;
        self.data
            .iter()
            .enumerate()
            .all(|(k, z)| k / n == k % n || *z == ZERO)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix product `self * rhs`.
    ///
    /// Panics on a dimension mismatch; callers work with operators on one
    /// fixed chain, so a mismatch is a programming error.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul: dimension mismatch");
        let n = self.dim;
        if n <= NAIVE_MATMUL_DIM {
            let mut out = Self::zeros(n);
            for i in 0..n {
                for k in 0..n {
                    let a = self.data[i * n + k];
                    if a == ZERO {
                        continue;
                    }
                    for j in 0..n {
                        out.data[i * n + j] += a * rhs.data[k * n + j];
                    }
                }
            }
            return out;
        }
        let prod = &self.to_faer() * &rhs.to_faer();
        Self::from_faer(prod.as_ref())
    }

    pub(crate) fn to_faer(&self) -> Mat<Complex64> {
        Mat::from_fn(self.dim, self.dim, |i, j| self.data[i * self.dim + j])
    }

    pub(crate) fn from_faer(m: MatRef<'_, Complex64>) -> Self {
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.data[row * self.dim + col]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        if self.dim > 8 {
            return Ok(());
        }
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "add: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sub: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// A [`ComplexMatrix`] known to satisfy `||U^dagger U - I|| < 1e-10`.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary(ComplexMatrix);

impl Unitary {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = unitarity_deviation(&matrix);
        if deviation < UNITARITY_TOL {
            Ok(Self(matrix))
        } else {
            Err(Error::NotUnitary { deviation })
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// `self * rhs`, re-validated.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: rhs.dim(),
            });
        }
        Self::new(self.0.matmul(&rhs.0))
    }

    /// Multiplies by a unit-modulus scalar.
    pub fn with_phase(&self, phase: f64) -> Self {
        Self(self.0.scale(Complex64::from_polar(1.0, phase)))
    }

    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        Ok(Self(kron(&self.0, &rhs.0)?))
    }
}

/// `||U^dagger U - I||_2`, short-circuited through the Frobenius bound.
pub fn unitarity_deviation(u: &ComplexMatrix) -> f64 {
    let gram = &u.adjoint().matmul(u) - &ComplexMatrix::identity(u.dim);
    let frob = gram.frobenius_norm();
    if frob < UNITARITY_TOL {
        // spectral <= Frobenius
        return frob;
    }
    spectral_norm(&gram)
}

/// Pauli operator label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub fn matrix(self) -> ComplexMatrix {
        let rows = match self {
            PauliAxis::X => [[ZERO, ONE], [ONE, ZERO]],
            PauliAxis::Y => [[ZERO, -I], [I, ZERO]],
            PauliAxis::Z => [[ONE, ZERO], [ZERO, -ONE]],
        };
        ComplexMatrix {
            dim: 2,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// `exp(i angle sigma) = cos(angle) I + i sin(angle) sigma`.
    pub fn rotation(self, angle: f64) -> ComplexMatrix {
        let c = Complex64::new(angle.cos(), 0.0);
        let s = Complex64::new(0.0, angle.sin());
        let sigma = self.matrix();
        ComplexMatrix::from_fn(2, |i, j| {
            let id = if i == j { c } else { ZERO };
            id + s * sigma[(i, j)]
        })
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PauliAxis::X => "x",
            PauliAxis::Y => "y",
            PauliAxis::Z => "z",
        };
        f.write_str(s)
    }
}

/// Kronecker product with the default dimension limit [`MAX_DIM`].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_limit(a, b, MAX_DIM)
}

pub fn kron_with_limit(a: &ComplexMatrix, b: &ComplexMatrix, max_dim: usize) -> Result<ComplexMatrix> {
    let dim = a
        .dim
        .checked_mul(b.dim)
        .ok_or(Error::DimensionTooLarge { dim: usize::MAX, max: max_dim })?;
    if dim > max_dim {
        return Err(Error::DimensionTooLarge { dim, max: max_dim });
    }
    let (n, m) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..n {
        for j in 0..n {
            let aij = a.data[i * n + j];
            if aij == ZERO {
                continue;
            }
            for k in 0..m {
                let row = (i * m + k) * dim;
                for l in 0..m {
                    out.data[row + j * m + l] = aij * b.data[k * m + l];
                }
            }
        }
    }
    Ok(out)
}

fn check_site(site: usize, n: usize) -> Result<()> {
    if site == 0 || site > n {
        return Err(Error::SiteOutOfRange { site, n });
    }
    Ok(())
}

/// `I ⊗ … ⊗ sigma ⊗ … ⊗ I` with `sigma` in 1-based tensor slot `site` of `n`.
pub fn embed_pauli(axis: PauliAxis, site: usize, n: usize) -> Result<ComplexMatrix> {
    embed_local(&axis.matrix(), site, n)
}

/// Places a single-cell operator at `site` on an `n`-cell line.
pub fn embed_local(op: &ComplexMatrix, site: usize, n: usize) -> Result<ComplexMatrix> {
    check_site(site, n)?;
    if op.dim != 2 {
        return Err(Error::DimensionMismatch { left: op.dim, right: 2 });
    }
    let id = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::identity(1);
    for slot in 1..=n {
        out = kron(&out, if slot == site { op } else { &id })?;
    }
    Ok(out)
}

/// Places an operator on the contiguous block `first..first + k` of an `n`-cell line.
pub fn embed_block(op: &ComplexMatrix, first: usize, n: usize) -> Result<ComplexMatrix> {
    let k = op.dim.trailing_zeros() as usize;
    if op.dim != 1 << k || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "block operator dimension {} is not a power of two",
            op.dim
        )));
    }
    check_site(first, n)?;
    check_site(first + k - 1, n)?;
    let left = ComplexMatrix::identity(1 << (first - 1));
    let right = ComplexMatrix::identity(1 << (n - (first + k - 1)));
    kron(&kron(&left, op)?, &right)
}

/// `exp(i angle sum_{s in sites} sigma_axis(s))` as an exact product of
/// commuting single-site rotations.
pub fn pauli_rotation(axis: PauliAxis, sites: &[usize], angle: f64, n: usize) -> Result<Unitary> {
    for &s in sites {
        check_site(s, n)?;
    }
    let rot = axis.rotation(angle);
    let id = ComplexMatrix::identity(2);
    let mut out = ComplexMatrix::identity(1);
    for slot in 1..=n {
        out = kron(&out, if sites.contains(&slot) { &rot } else { &id })?;
    }
    Unitary::new(out)
}

/// Eigendecomposition `H = V diag(values) V^dagger` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    values: Vec<f64>,
    vectors: Option<Mat<Complex64>>,
    dim: usize,
}

impl HermitianEigen {
    pub fn new(h: &ComplexMatrix) -> Result<Self> {
        let deviation = h.hermitian_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let dim = h.dim;
        if h.is_diagonal() {
            return Ok(Self {
                values: h.diagonal().iter().map(|z| z.re).collect(),
                vectors: None,
                dim,
            });
        }
        let evd = h
            .to_faer()
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| Error::EigenDecomposition)?;
        let values = (0..dim).map(|k| evd.S().column_vector()[k].re).collect();
        Ok(Self {
            values,
            vectors: Some(evd.U().to_owned()),
            dim,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest eigenvalue modulus, which is the spectral norm of `H`.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// `exp(-i scale H)`.
    pub fn exp_unitary(&self, scale: f64) -> Result<Unitary> {
        if !scale.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite time scale {scale}")));
        }
        let phases: Vec<Complex64> = self
            .values
            .iter()
            .map(|&lambda| Complex64::from_polar(1.0, -scale * lambda))
            .collect();
        let matrix = match &self.vectors {
            None => ComplexMatrix::from_diagonal(&phases),
            Some(v) => {
                let scaled = Mat::from_fn(self.dim, self.dim, |i, j| v[(i, j)] * phases[j]);
                let prod = &scaled * v.adjoint();
                ComplexMatrix::from_faer(prod.as_ref())
            }
        };
        Unitary::new(matrix)
    }
}

/// `exp(-i scale H)` for Hermitian `H`.
pub fn expm_skew_hermitian(h: &ComplexMatrix, scale: f64) -> Result<Unitary> {
    if scale == 0.0 {
        return Ok(Unitary::identity(h.dim));
    }
    HermitianEigen::new(h)?.exp_unitary(scale)
}

/// Largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    if m.is_diagonal() {
        return m.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max);
    }
    if m.hermitian_deviation() == 0.0 {
        return largest_abs_eigenvalue(m);
    }
    largest_abs_eigenvalue(&m.adjoint().matmul(m)).sqrt()
}

fn largest_abs_eigenvalue(h: &ComplexMatrix) -> f64 {
    // Finite self-adjoint input; faer's tridiagonal QR does not fail on it.
    let values = h
        .to_faer()
        .self_adjoint_eigenvalues(Side::Lower)
        .expect("self-adjoint eigenvalue iteration did not converge");
    values.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

const PHASE_GRID: usize = 4096;
const PHASE_REFINE_TOL: f64 = 1e-12;

/// Distance between two unitaries with the global phase removed.
///
/// The phase is aligned with `arg tr(v^dagger u)`. When that trace vanishes the
/// alignment is undefined and the phase is found by a grid search refined with
/// golden-section steps.
pub fn phase_distance(u: &Unitary, v: &Unitary) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let (a, b) = (u.matrix(), v.matrix());
    let overlap: Complex64 = a.data.iter().zip(&b.data).map(|(x, y)| y.conj() * x).sum();
    let dist = |phi: f64| spectral_norm(&(a - &b.scale(Complex64::from_polar(1.0, phi))));

    if overlap.norm() > 1e-12 * a.dim as f64 {
        return Ok(dist(overlap.arg()));
    }

    let step = TAU / PHASE_GRID as f64;
    let (best_k, _) = (0..PHASE_GRID)
        .map(|k| (k, dist(k as f64 * step)))
        .fold((0, f64::INFINITY), |acc, (k, d)| if d < acc.1 { (k, d) } else { acc });
    Ok(golden_section_min(
        &dist,
        best_k as f64 * step - step,
        best_k as f64 * step + step,
        PHASE_REFINE_TOL,
    ))
}

fn golden_section_min(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// Reduces an angle into `[0, 4pi)`. `exp(i theta sigma)` is exactly
/// `4pi`-periodic, so the reduced angle gives the same operator.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(4.0 * PI);
    if r >= 4.0 * PI {
        0.0
    } else {
        r
    }
}
