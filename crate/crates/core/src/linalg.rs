//! Dense complex linear algebra for small Hermitian matrices.
//!
//! Everything here is sized for "desk scale" problems (n up to a few dozen):
//! a cyclic Jacobi eigensolver, spectral functions of PSD matrices and the
//! kernel/range tests the measure code relies on. All norms are Frobenius
//! norms and all tolerances are relative to `1 + ‖A‖`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Maximum number of Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Relative tolerances used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Hermiticity check and general comparisons.
    pub hermitian: f64,
    /// Eigenvalues closer than `cluster·(1+‖A‖)` share one projection.
    pub cluster: f64,
    /// Eigenvalues at or below `rank·(1+‖A‖)` count as zero.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            cluster: 1e-8,
            rank: 1e-10,
        }
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    /// `v w*`
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        Self::from_fn(v.len(), w.len(), |i, j| v[i] * w[j].conj())
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

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[C64]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(C64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Real part of the trace.
    pub fn trace_re(&self) -> f64 {
        self.trace().re
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// Frobenius distance from Hermitian: ‖A − A*‖.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (self - &self.adjoint()).norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol * (1.0 + self.norm())
    }

    /// `(A + A*)/2`
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    fn require_hermitian(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        if !self.is_finite() {
            return Err(Error::NotHermitian {
                asymmetry: f64::NAN,
                bound: tol,
            });
        }
        let asymmetry = self.hermitian_defect();
        let bound = tol * (1.0 + self.norm());
        if asymmetry > bound {
            return Err(Error::NotHermitian { asymmetry, bound });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
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

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
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

/// `⟨x, y⟩ = Σ x_i conj(y_i)`, linear in the first argument.
pub fn vdot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vnorm(x: &[C64]) -> f64 {
    x.iter().map(C64::norm_sqr).sum::<f64>().sqrt()
}

pub fn vsub(x: &[C64], y: &[C64]) -> Vec<C64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn vadd(x: &[C64], y: &[C64]) -> Vec<C64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn vscale(x: &[C64], s: C64) -> Vec<C64> {
    x.iter().map(|a| a * s).collect()
}

/// Unit vector `e_i` in ℂ^n.
pub fn unit(n: usize, i: usize) -> Vec<C64> {
    let mut v = vec![ZERO; n];
    v[i] = ONE;
    v
}

/// Spectral decomposition with near-degenerate eigenvalues merged.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Ascending cluster representatives (cluster means).
    pub eigenvalues: Vec<f64>,
    /// Orthogonal projection onto each cluster's eigenspace.
    pub projections: Vec<ComplexMatrix>,
    /// Orthonormal eigenvectors spanning each projection.
    pub bases: Vec<Vec<Vec<C64>>>,
    /// Frobenius norm of the input.
    pub input_norm: f64,
}

impl HermitianEig {
    pub fn dim(&self) -> usize {
        self.projections.first().map_or(0, ComplexMatrix::rows)
    }

    /// `Σ f(λ_k) P_k`
    pub fn apply_fn(&self, mut f: impl FnMut(f64) -> C64) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (&lambda, p) in self.eigenvalues.iter().zip(&self.projections) {
            let w = f(lambda);
            if w != ZERO {
                out = &out + &p.scale(w);
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_fn(|x| C64::new(x, 0.0))
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }
}

/// Raw eigenpairs via cyclic complex Jacobi rotations, sorted ascending.
/// Eigenvectors are the columns of the returned matrix.
pub fn eigh(a: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    a.require_hermitian(tol)?;
    let n = a.rows();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.norm();
    let target = (n.max(1) as f64) * f64::EPSILON * scale;

    let off = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = scale == 0.0 || off(&m) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        converged = off(&m) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((values, vectors))
}

/// One complex Jacobi rotation annihilating `m[p][q]`.
///
/// The rotation is `J = diag-phase · R` where the phase makes the pivot real
/// and `R` is the classical real Jacobi rotation.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Pivot already negligible relative to its diagonal.
    if r <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[(p, q)] = ZERO;
        m[(q, p)] = ZERO;
        return;
    }
    let phase = apq / r; // e^{iθ}
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ph = phase.conj(); // e^{-iθ}

    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = ph * (-s);
    let jqq = ph * c;

    let n = m.rows();
    // A ← A J
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * jpp + akq * jqp;
        m[(k, q)] = akp * jpq + akq * jqq;
    }
    // A ← J* A
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        m[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
    // V ← V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Eigendecomposition with default clustering threshold.
pub fn eig_hermitian(a: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    eig_hermitian_with(
        a,
        &Tolerances {
            hermitian: tol,
            ..Tolerances::default()
        },
    )
}

pub fn eig_hermitian_with(a: &ComplexMatrix, tols: &Tolerances) -> Result<HermitianEig> {
    let (values, vectors) = eigh(a, tols.hermitian)?;
    let n = values.len();
    let input_norm = a.norm();
    let gap = tols.cluster * (1.0 + input_norm);

    let mut eigenvalues = Vec::new();
    let mut projections = Vec::new();
    let mut bases: Vec<Vec<Vec<C64>>> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] <= gap {
            end += 1;
        }
        let mean = values[start..end].iter().sum::<f64>() / (end - start) as f64;
        let mut p = ComplexMatrix::zeros(n, n);
        let mut basis = Vec::with_capacity(end - start);
        for j in start..end {
            let col = vectors.column(j);
            p = &p + &ComplexMatrix::outer(&col, &col);
            basis.push(col);
        }
        eigenvalues.push(mean);
        projections.push(p);
        bases.push(basis);
        start = end;
    }
    Ok(HermitianEig {
        eigenvalues,
        projections,
        bases,
        input_norm,
    })
}

fn psd_eig(a: &ComplexMatrix) -> Result<HermitianEig> {
    let tols = Tolerances::default();
    let eig = eig_hermitian_with(a, &tols)?;
    let floor = -tols.hermitian * (1.0 + eig.input_norm);
    if let Some(&bad) = eig.eigenvalues.iter().find(|&&x| x < floor) {
        return Err(Error::NotPsd { eigenvalue: bad });
    }
    Ok(eig)
}

/// Checks `A` is Hermitian PSD within the default tolerance.
pub fn is_psd(a: &ComplexMatrix) -> bool {
    psd_eig(a).is_ok()
}

/// Principal square root of a PSD matrix.
pub fn sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = psd_eig(a)?;
    Ok(eig.apply_fn(|x| C64::new(x.max(0.0).sqrt(), 0.0)))
}

/// `G(A)` with `G(0) = 0`, `G(x) = 1/√x`, eigenvalues under the rank cutoff
/// mapped to 0.
pub fn g_pseudo_inv_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = psd_eig(a)?;
    let cutoff = Tolerances::default().rank * (1.0 + eig.input_norm);
    Ok(eig.apply_fn(|x| {
        if x <= cutoff {
            ZERO
        } else {
            C64::new(1.0 / x.sqrt(), 0.0)
        }
    }))
}

/// Orthogonal projection onto `Ran A` for PSD `A`.
pub fn range_projection(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = psd_eig(a)?;
    let cutoff = Tolerances::default().rank * (1.0 + eig.input_norm);
    Ok(eig.apply_fn(|x| if x <= cutoff { ZERO } else { ONE }))
}

/// `‖Av‖ ≤ tol·(1+‖A‖)·‖v‖`
pub fn in_kernel(a: &ComplexMatrix, v: &[C64], tol: f64) -> bool {
    vnorm(&a.mul_vec(v)) <= tol * (1.0 + a.norm()) * vnorm(v)
}

/// `‖(I − P_{Ran AA*}) v‖ ≤ tol·‖v‖`
pub fn in_range(a: &ComplexMatrix, v: &[C64], tol: f64) -> bool {
    let aa = a * &a.adjoint();
    let Ok(p) = range_projection(&aa) else {
        return false;
    };
    let residual = vsub(v, &p.mul_vec(v));
    vnorm(&residual) <= tol * vnorm(v)
}

/// Solves `A X = B` for square `A` by LU with partial pivoting; `None` when
/// a pivot vanishes.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = a.rows();
    if !a.is_square() || b.rows() != n {
        return None;
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))?;
        if lu[(p, k)].norm() == 0.0 {
            return None;
        }
        for c in 0..n {
            let t = lu[(k, c)];
            lu[(k, c)] = lu[(p, c)];
            lu[(p, c)] = t;
        }
        for c in 0..x.cols() {
            let t = x[(k, c)];
            x[(k, c)] = x[(p, c)];
            x[(p, c)] = t;
        }
        for i in k + 1..n {
            let f = lu[(i, k)] / lu[(k, k)];
            for c in k..n {
                let v = lu[(k, c)];
                lu[(i, c)] -= f * v;
            }
            for c in 0..x.cols() {
                let v = x[(k, c)];
                x[(i, c)] -= f * v;
            }
        }
    }
    for c in 0..x.cols() {
        for i in (0..n).rev() {
            let mut acc = x[(i, c)];
            for j in i + 1..n {
                acc -= lu[(i, j)] * x[(j, c)];
            }
            x[(i, c)] = acc / lu[(i, i)];
        }
    }
    Some(x)
}

/// Indices of a maximal set of independent columns, chosen greedily by
/// largest residual (pivoted Gram–Schmidt); residuals below
/// `tol·max‖column‖` count as dependent.
pub fn independent_columns(m: &ComplexMatrix, tol: f64) -> Vec<usize> {
    let mut residuals: Vec<Vec<C64>> = (0..m.cols()).map(|j| m.column(j)).collect();
    let scale = residuals.iter().map(|c| vnorm(c)).fold(0.0, f64::max);
    let mut chosen = Vec::new();
    loop {
        let best = (0..residuals.len())
            .filter(|j| !chosen.contains(j))
            .max_by(|&i, &j| vnorm(&residuals[i]).total_cmp(&vnorm(&residuals[j])));
        let Some(j) = best else { break };
        let r = vnorm(&residuals[j]);
        if r <= tol * scale || r == 0.0 {
            break;
        }
        chosen.push(j);
        let q = vscale(&residuals[j], C64::new(1.0 / r, 0.0));
        for c in residuals.iter_mut() {
            let coef = vdot(c, &q);
            for (ci, qi) in c.iter_mut().zip(&q) {
                *ci -= coef * qi;
            }
        }
    }
    chosen
}
