//! Multiplication operators `T_F[f] = [F f]` on `L²(M)`.
//!
//! Pointwise operations accept any piecewise-polynomial symbol. Set-level
//! operations (essential values, spectra, spectral projections, parts) need
//! the symbol to be real affine wherever it meets a segment of the measure in
//! positive length; on atoms it is simply evaluated.

use crate::borel::{self, BorelSet, Interval};
use crate::error::{Error, Result};
use crate::l2::VectorFunction;
use crate::linalg::C64;
use crate::measure::MatrixMeasure;

pub use crate::symbol::PiecewiseScalarFn;

const REAL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct MultOp {
    pub measure: MatrixMeasure,
    pub symbol: PiecewiseScalarFn,
}

/// `H(t) = 1/(F(t) − λ₀)` together with `‖T_H‖ = 1/dist(λ₀, σ(T_F))`.
#[derive(Debug, Clone)]
pub struct Resolvent {
    pub symbol: PiecewiseScalarFn,
    pub lambda0: C64,
    pub distance: f64,
    pub norm_bound: f64,
}

impl Resolvent {
    pub fn eval(&self, t: f64) -> C64 {
        1.0 / (self.symbol.eval(t) - self.lambda0)
    }

    /// `H·f` at a point.
    pub fn apply_at(&self, f: &VectorFunction, t: f64) -> Vec<C64> {
        let h = self.eval(t);
        f.eval(t).into_iter().map(|z| h * z).collect()
    }
}

fn real_value(v: C64, t: f64) -> Result<f64> {
    if v.im.abs() <= REAL_TOL * (1.0 + v.norm()) {
        Ok(v.re)
    } else {
        Err(Error::UnsupportedFunction(format!("symbol takes the non-real value {v} at t = {t}")))
    }
}

impl MultOp {
    pub fn new(measure: MatrixMeasure, symbol: PiecewiseScalarFn) -> Self {
        Self { measure, symbol }
    }

    /// `T_x`
    pub fn identity_symbol(measure: MatrixMeasure) -> Self {
        Self::new(measure, PiecewiseScalarFn::identity())
    }

    /// `T_F f`
    pub fn apply(&self, f: &VectorFunction) -> Result<VectorFunction> {
        if f.dim() != self.measure.dim() {
            return Err(Error::DimensionMismatch { expected: self.measure.dim(), found: f.dim() });
        }
        self.symbol.mul_function(f)
    }

    /// Walks every positive-length stretch of every segment: calls `on_piece`
    /// with the (real affine) symbol coefficients there.
    fn for_each_segment_piece(&self, mut on_piece: impl FnMut(Interval, f64, f64)) -> Result<()> {
        for seg in self.measure.segments() {
            let seg_set = BorelSet::closed(seg.a, seg.b);
            let mut covered = BorelSet::empty();
            for (set, poly) in self.symbol.pieces() {
                let part = set.intersect(&seg_set);
                covered = covered.union(&part);
                for iv in part.intervals() {
                    let (slope, intercept) = poly.as_real_affine(REAL_TOL).ok_or_else(|| {
                        Error::UnsupportedFunction(format!(
                            "set-level operations need a real affine symbol on {iv}, got degree {}",
                            poly.degree()
                        ))
                    })?;
                    on_piece(*iv, slope, intercept);
                }
            }
            for iv in seg_set.set_minus(&covered).intervals() {
                on_piece(*iv, 0.0, 0.0);
            }
        }
        Ok(())
    }

    /// `VE_M(F)`, always closed.
    pub fn essential_values(&self) -> Result<BorelSet> {
        let mut intervals = Vec::new();
        let mut points = Vec::new();
        for atom in self.measure.atoms() {
            points.push(real_value(self.symbol.eval(atom.t), atom.t)?);
        }
        self.for_each_segment_piece(|iv, slope, intercept| {
            let (y0, y1) = (slope * iv.lo + intercept, slope * iv.hi + intercept);
            if slope == 0.0 {
                points.push(intercept);
            } else {
                intervals.push(Interval::closed(y0.min(y1), y0.max(y1)));
            }
        })?;
        Ok(BorelSet::from_parts(intervals, points))
    }

    /// `σ(T_F) = VE_M(F)`.
    pub fn spectrum(&self) -> Result<BorelSet> {
        if self.measure.is_empty() {
            return Err(Error::TrivialSpace);
        }
        self.essential_values()
    }

    /// `σ_p(T_F) = {λ : tr_M(F⁻¹{λ}) ≠ 0}`: atom values plus constant values
    /// taken on positive-length stretches of segments.
    pub fn point_spectrum(&self) -> Result<BorelSet> {
        let mut points = Vec::new();
        for atom in self.measure.atoms() {
            points.push(real_value(self.symbol.eval(atom.t), atom.t)?);
        }
        self.for_each_segment_piece(|_, slope, intercept| {
            if slope == 0.0 {
                points.push(intercept);
            }
        })?;
        Ok(BorelSet::from_parts(Vec::new(), points))
    }

    /// `‖T_F‖ = sup |VE_M(F)|`.
    pub fn op_norm(&self) -> Result<f64> {
        Ok(self.essential_values()?.sup_abs())
    }

    /// `T_F* = T_{F̄}`
    pub fn adjoint_symbol(&self) -> MultOp {
        Self::new(self.measure.clone(), self.symbol.conj())
    }

    /// `(T_F − λ₀)⁻¹ = T_H`; fails when `dist(λ₀, σ) ≤ tol`.
    pub fn resolvent_symbol(&self, lambda0: C64, tol: f64) -> Result<Resolvent> {
        let sigma = self.spectrum()?;
        let distance = sigma.distance_to(lambda0.re, lambda0.im);
        if distance <= tol {
            return Err(Error::InSpectrum { re: lambda0.re, im: lambda0.im, distance });
        }
        Ok(Resolvent { symbol: self.symbol.clone(), lambda0, distance, norm_bound: 1.0 / distance })
    }

    /// `F⁻¹(ω)` inside the support of the measure.
    /// Atoms are decided by evaluating `F` there, so the answer on atoms is
    /// exact even when `F(t_k)` sits on the boundary of `ω`.
    pub fn preimage(&self, omega: &BorelSet) -> Result<BorelSet> {
        let segments = BorelSet::from_parts(self.measure.segments().iter().map(|s| s.interval()).collect(), Vec::new());
        let atom_points: Vec<f64> = self.measure.atoms().iter().map(|a| a.t).collect();
        let mut hits = Vec::new();
        for &t in &atom_points {
            if real_value(self.symbol.eval(t), t).is_ok_and(|y| omega.contains(y)) {
                hits.push(t);
            }
        }
        let on_segments = borel::preimage(&self.symbol, omega, &segments)?;
        Ok(on_segments.set_minus(&BorelSet::points(&atom_points)).union(&BorelSet::points(&hits)))
    }

    /// `E_{F,M}(ω) = T_{χ_{F⁻¹(ω)}}`.
    pub fn spectral_projection(&self, omega: &BorelSet) -> Result<MultOp> {
        let pre = self.preimage(omega)?;
        Ok(Self::new(self.measure.clone(), PiecewiseScalarFn::indicator(pre)))
    }

    /// `(T_F)_G ≅ T_{F′}` on `L²(M_{Ω′})` with `Ω′ = F⁻¹(G)`.
    pub fn part_in_g(&self, g: &BorelSet) -> Result<MultOp> {
        let omega = self.preimage(g)?;
        Ok(Self::new(self.measure.restrict(&omega), self.symbol.clone()))
    }
}
