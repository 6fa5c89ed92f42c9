//! Complex polynomials in one real variable, stored by monomial coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};

/// Per-polynomial degree cap.
pub const DEGREE_CAP: usize = 64;

/// `Σ c_k t^k`, lowest degree first. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    pub fn new(coeffs: Vec<C64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// `t^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        Self { coeffs }
    }

    /// `m·t + c`
    pub fn affine(slope: f64, intercept: f64) -> Self {
        Self::from_real(&[intercept, slope])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| *c == ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn check_degree(&self) -> Result<()> {
        if self.degree() > DEGREE_CAP {
            return Err(Error::DegreeOverflow {
                degree: self.degree(),
                cap: DEGREE_CAP,
            });
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn eval(&self, t: f64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * t + c)
    }

    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(C64::conj).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// All coefficients have |imaginary part| ≤ `tol·(1+|c|)`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol * (1.0 + c.norm()))
    }

    /// Returns `(slope, intercept)` if the polynomial is real and of degree ≤ 1.
    pub fn as_real_affine(&self, tol: f64) -> Option<(f64, f64)> {
        if self.coeffs.len() > 2 || !self.is_real(tol) {
            return None;
        }
        let c0 = self.coeffs.first().map_or(0.0, |c| c.re);
        let c1 = self.coeffs.get(1).map_or(0.0, |c| c.re);
        Some((c1, c0))
    }

    /// `∫_a^b p(t) dt` from monomial antiderivatives.
    pub fn integrate(&self, a: f64, b: f64) -> C64 {
        // Horner on the antiderivative: Σ c_k t^{k+1}/(k+1)
        let anti = |t: f64| -> C64 {
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .fold(ZERO, |acc, (k, &c)| acc * t + c / (k as f64 + 1.0))
                * t
        };
        anti(b) - anti(a)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(C64::new(1.0, 0.0));
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Interpolates the samples `(t_i, y_i)` with Newton divided differences.
    pub fn interpolate(ts: &[f64], ys: &[C64]) -> Self {
        let n = ts.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (dd[i] - dd[i - 1]) / (ts[i] - ts[i - level]);
            }
        }
        let mut p = Self::zero();
        for i in (0..n).rev() {
            p = &(&p * &Self::from_real(&[-ts[i], 1.0])) + &Self::constant(dd[i]);
        }
        p
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(ZERO) + rhs.coeffs.get(k).copied().unwrap_or(ZERO)
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}
