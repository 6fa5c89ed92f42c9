//! The `L²(M)` geometry for piecewise-polynomial ℂ^d-valued functions.
//!
//! Segment integrals are done in closed form from monomial antiderivatives;
//! quadrature is only used by the numeric cross-checks (`F̂` Parseval and the
//! generalized Schwarz inequality).

use std::ptr;

use crate::borel::{BorelSet, Interval};
use crate::error::{Error, Result};
use crate::linalg::{self, vdot, vnorm, ComplexMatrix, C64, ZERO};
use crate::measure::MatrixMeasure;
use crate::poly::{Poly, DEGREE_CAP};
use crate::quad;

/// Polynomial vector on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub interval: Interval,
    pub polys: Vec<Poly>,
}

impl Piece {
    pub fn eval(&self, t: f64) -> Vec<C64> {
        self.polys.iter().map(|p| p.eval(t)).collect()
    }
}

/// Piecewise-polynomial function ℝ → ℂ^d.
///
/// `f(t)` is the stored atom value if `t` is one of the atom points, else the
/// value of the first piece whose interval contains `t`, else 0.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFunction {
    d: usize,
    atoms: Vec<(f64, Vec<C64>)>,
    pieces: Vec<Piece>,
}

impl VectorFunction {
    /// Pieces may share endpoints but must not overlap in positive length.
    pub fn new(d: usize, mut atoms: Vec<(f64, Vec<C64>)>, pieces: Vec<Piece>) -> Result<Self> {
        for (t, v) in &atoms {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.len() });
            }
            if !t.is_finite() || v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidFunction(format!("non-finite atom value at {t}")));
            }
        }
        for piece in &pieces {
            if piece.polys.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: piece.polys.len() });
            }
            for p in &piece.polys {
                if !p.is_finite() {
                    return Err(Error::InvalidFunction("non-finite coefficient".into()));
                }
                p.check_degree()?;
            }
        }
        for (i, p) in pieces.iter().enumerate() {
            for q in &pieces[i + 1..] {
                if p.interval.intersect(&q.interval).length() > 0.0 {
                    return Err(Error::InvalidFunction(format!(
                        "pieces {} and {} overlap",
                        p.interval, q.interval
                    )));
                }
            }
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let Some(w) = atoms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidFunction(format!("duplicate atom value at {}", w[0].0)));
        }
        let pieces = pieces.into_iter().filter(|p| !p.interval.is_empty()).collect();
        Ok(Self { d, atoms, pieces })
    }

    pub fn zero(d: usize) -> Self {
        Self { d, atoms: Vec::new(), pieces: Vec::new() }
    }

    /// `χ_S · (p_1, …, p_d)`.
    pub fn on_set(set: &BorelSet, polys: Vec<Poly>) -> Result<Self> {
        let d = polys.len();
        let pieces = set
            .intervals()
            .iter()
            .map(|&interval| Piece { interval, polys: polys.clone() })
            .collect();
        let atoms = set
            .isolated_points()
            .iter()
            .map(|&t| (t, polys.iter().map(|p| p.eval(t)).collect()))
            .collect();
        Self::new(d, atoms, pieces)
    }

    /// Vector characteristic function `χ_ω c`.
    pub fn indicator(set: &BorelSet, c: &[C64]) -> Self {
        Self::on_set(set, c.iter().map(|&z| Poly::constant(z)).collect()).expect("constant pieces are valid")
    }

    /// Constant `c` on all of ℝ.
    pub fn constant(c: &[C64]) -> Self {
        Self::indicator(&BorelSet::real_line(), c)
    }

    /// Vector monomial `t^n e_j` on ℝ.
    pub fn vector_monomial(d: usize, j: usize, n: usize) -> Self {
        let polys = (0..d).map(|k| if k == j { Poly::monomial(n) } else { Poly::zero() }).collect();
        Self::on_set(&BorelSet::real_line(), polys).expect("monomial within degree cap")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn atoms(&self) -> &[(f64, Vec<C64>)] {
        &self.atoms
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn eval(&self, t: f64) -> Vec<C64> {
        if let Some((_, v)) = self.atoms.iter().find(|(s, _)| *s == t) {
            return v.clone();
        }
        self.pieces
            .iter()
            .find(|p| p.interval.contains(t))
            .map_or_else(|| vec![ZERO; self.d], |p| p.eval(t))
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.iter().flat_map(|p| p.polys.iter().map(Poly::degree)).max().unwrap_or(0)
    }

    /// `χ_S f`, exact pointwise.
    pub fn restrict_to(&self, set: &BorelSet) -> Self {
        let mut atoms: Vec<(f64, Vec<C64>)> = self.atoms.iter().filter(|(t, _)| set.contains(*t)).cloned().collect();
        let mut pieces = Vec::new();
        let mut extra_points: Vec<f64> = set.isolated_points().to_vec();
        for piece in &self.pieces {
            for iv in set.intervals() {
                let cut = piece.interval.intersect(iv);
                if cut.is_empty() {
                    continue;
                }
                if cut.lo == cut.hi {
                    extra_points.push(cut.lo);
                } else {
                    pieces.push(Piece { interval: cut, polys: piece.polys.clone() });
                }
            }
        }
        for p in extra_points {
            if atoms.iter().all(|(t, _)| *t != p) {
                let v = self.eval(p);
                if v.iter().any(|z| *z != ZERO) {
                    atoms.push((p, v));
                }
            }
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self { d: self.d, atoms, pieces }
    }

    /// Pointwise product with a scalar polynomial.
    pub fn mul_poly(&self, p: &Poly) -> Result<Self> {
        let pieces = self
            .pieces
            .iter()
            .map(|piece| {
                let polys = piece.polys.iter().map(|q| q * p).collect::<Vec<_>>();
                polys.iter().try_for_each(Poly::check_degree)?;
                Ok(Piece { interval: piece.interval, polys })
            })
            .collect::<Result<Vec<_>>>()?;
        let atoms = self
            .atoms
            .iter()
            .map(|(t, v)| (*t, linalg::vscale(v, p.eval(*t))))
            .collect();
        Ok(Self { d: self.d, atoms, pieces })
    }

    /// Concatenates functions that live on pairwise disjoint sets.
    pub fn disjoint_sum(d: usize, parts: Vec<VectorFunction>) -> Result<Self> {
        let mut atoms = Vec::new();
        let mut pieces = Vec::new();
        for part in parts {
            if part.d != d {
                return Err(Error::DimensionMismatch { expected: d, found: part.d });
            }
            atoms.extend(part.atoms);
            pieces.extend(part.pieces);
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self { d, atoms, pieces })
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            d: self.d,
            atoms: self.atoms.iter().map(|(t, v)| (*t, linalg::vscale(v, s))).collect(),
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { interval: p.interval, polys: p.polys.iter().map(|q| q.scale(s)).collect() })
                .collect(),
        }
    }

    /// `a·self + b·other`, exact pointwise on the common refinement.
    pub fn lin_comb(&self, a: C64, other: &Self, b: C64) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: other.d });
        }
        let mut breaks: Vec<f64> = self
            .pieces
            .iter()
            .chain(&other.pieces)
            .flat_map(|p| [p.interval.lo, p.interval.hi])
            .filter(|x| x.is_finite())
            .collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();

        let poly_at = |f: &Self, t: f64| -> Option<Vec<Poly>> {
            f.pieces.iter().find(|p| p.interval.contains(t)).map(|p| p.polys.clone())
        };
        let combine = |x: Option<Vec<Poly>>, y: Option<Vec<Poly>>| -> Option<Vec<Poly>> {
            match (x, y) {
                (None, None) => None,
                (x, y) => {
                    let x = x.unwrap_or_else(|| vec![Poly::zero(); self.d]);
                    let y = y.unwrap_or_else(|| vec![Poly::zero(); self.d]);
                    Some(x.iter().zip(&y).map(|(p, q)| &p.scale(a) + &q.scale(b)).collect())
                }
            }
        };

        let mut pieces = Vec::new();
        let mut bounds = vec![f64::NEG_INFINITY];
        bounds.extend(&breaks);
        bounds.push(f64::INFINITY);
        for w in bounds.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if lo >= hi {
                continue;
            }
            let probe = match (lo.is_finite(), hi.is_finite()) {
                (true, true) => 0.5 * (lo + hi),
                (true, false) => lo + 1.0,
                (false, true) => hi - 1.0,
                (false, false) => 0.0,
            };
            if let Some(polys) = combine(poly_at(self, probe), poly_at(other, probe)) {
                pieces.push(Piece { interval: Interval::open(lo, hi), polys });
            }
        }

        let mut points: Vec<f64> = breaks;
        points.extend(self.atoms.iter().map(|a| a.0));
        points.extend(other.atoms.iter().map(|a| a.0));
        points.sort_by(f64::total_cmp);
        points.dedup();
        let atoms = points
            .into_iter()
            .filter_map(|t| {
                let v: Vec<C64> = self
                    .eval(t)
                    .iter()
                    .zip(other.eval(t))
                    .map(|(x, y)| a * x + b * y)
                    .collect();
                v.iter().any(|z| *z != ZERO).then_some((t, v))
            })
            .collect();
        for p in &pieces {
            p.polys.iter().try_for_each(Poly::check_degree)?;
        }
        Ok(Self { d: self.d, atoms, pieces })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.lin_comb(C64::new(1.0, 0.0), other, C64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.lin_comb(C64::new(1.0, 0.0), other, C64::new(-1.0, 0.0))
    }

    /// Sub-intervals of `[a, b]` of positive length carrying a piece.
    pub fn pieces_on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64, &Piece)> {
        self.pieces.iter().filter_map(move |p| {
            let lo = p.interval.lo.max(a);
            let hi = p.interval.hi.min(b);
            (lo < hi).then_some((lo, hi, p))
        })
    }
}

fn check_dims(m: &MatrixMeasure, fs: &[&VectorFunction]) -> Result<()> {
    for f in fs {
        if f.d != m.dim() {
            return Err(Error::DimensionMismatch { expected: m.dim(), found: f.d });
        }
    }
    Ok(())
}

/// `Σ_ij A_ij f_j conj(g_i)` as a polynomial.
fn sesquilinear_poly(a: &ComplexMatrix, f: &[Poly], g: &[Poly]) -> Poly {
    let mut acc = Poly::zero();
    for (i, gi) in g.iter().enumerate() {
        let gc = gi.conj();
        for (j, fj) in f.iter().enumerate() {
            let aij = a[(i, j)];
            if aij != ZERO {
                acc = &acc + &(&(fj * &gc)).scale(aij);
            }
        }
    }
    acc
}

/// `∫ ⟨A f, g⟩ dt` over `[a, b] ∩` pieces of both functions.
fn segment_form(a_mat: &ComplexMatrix, f: &VectorFunction, g: &VectorFunction, a: f64, b: f64) -> C64 {
    let mut total = ZERO;
    for (lo, hi, fp) in f.pieces_on(a, b) {
        for (lo2, hi2, gp) in g.pieces_on(lo, hi) {
            total += sesquilinear_poly(a_mat, &fp.polys, &gp.polys).integrate(lo2, hi2);
        }
    }
    total
}

/// `⟨⟨f, g⟩⟩_M = ∫ ⟨D_M f, g⟩ d tr_M`.
pub fn inner(m: &MatrixMeasure, f: &VectorFunction, g: &VectorFunction) -> Result<C64> {
    check_dims(m, &[f, g])?;
    let mut total = ZERO;
    for atom in m.atoms() {
        let tr = atom.weight.trace_re();
        let density = atom.weight.scale_real(1.0 / tr);
        total += tr * vdot(&density.mul_vec(&f.eval(atom.t)), &g.eval(atom.t));
    }
    for seg in m.segments() {
        let tr = seg.density.trace_re();
        let density = seg.density.scale_real(1.0 / tr);
        total += tr * segment_form(&density, f, g, seg.a, seg.b);
    }
    Ok(total)
}

/// `|||f|||_M`
pub fn seminorm(m: &MatrixMeasure, f: &VectorFunction) -> Result<f64> {
    Ok(inner(m, f, f)?.re.max(0.0).sqrt())
}

/// `Σ_ij ∫ f_j conj(g_i) dM_ij`, computed entry by entry without trace
/// densities.
pub fn sigma_inner(m: &MatrixMeasure, f: &VectorFunction, g: &VectorFunction) -> Result<C64> {
    check_dims(m, &[f, g])?;
    let d = m.dim();
    let mut total = ZERO;
    for i in 0..d {
        for j in 0..d {
            for atom in m.atoms() {
                total += atom.weight[(i, j)] * f.eval(atom.t)[j] * g.eval(atom.t)[i].conj();
            }
            for seg in m.segments() {
                let mij = seg.density[(i, j)];
                if mij == ZERO {
                    continue;
                }
                for (lo, hi, fp) in f.pieces_on(seg.a, seg.b) {
                    for (lo2, hi2, gp) in g.pieces_on(lo, hi) {
                        total += mij * (&fp.polys[j] * &gp.polys[i].conj()).integrate(lo2, hi2);
                    }
                }
            }
        }
    }
    Ok(total)
}

/// `f ∈ ℒ²₀(M)`: `f(t) ∈ Ker D_M(t)` at every atom and `∫⟨F f, f⟩ = 0` on
/// every segment, both up to `tol`.
pub fn is_zero_layer(m: &MatrixMeasure, f: &VectorFunction, tol: f64) -> Result<bool> {
    check_dims(m, &[f])?;
    for atom in m.atoms() {
        if !linalg::in_kernel(&atom.weight, &f.eval(atom.t), tol) {
            return Ok(false);
        }
    }
    let identity = ComplexMatrix::identity(m.dim());
    for seg in m.segments() {
        let form = segment_form(&seg.density, f, f, seg.a, seg.b).re;
        let size = seg.density.trace_re() * segment_form(&identity, f, f, seg.a, seg.b).re;
        if form > tol * (1.0 + size) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `γ_{f,g}(t) = ⟨D_M(t) f(t), g(t)⟩`, `None` off the support.
pub fn gamma(m: &MatrixMeasure, f: &VectorFunction, g: &VectorFunction, t: f64) -> Option<C64> {
    let density = m.trace_density_at(t)?;
    Some(vdot(&density.mul_vec(&f.eval(t)), &g.eval(t)))
}

/// `F̂f = √D_M · f`, evaluated on demand.
#[derive(Debug, Clone)]
pub struct Fhat<'a> {
    measure: &'a MatrixMeasure,
    f: VectorFunction,
    atom_roots: Vec<ComplexMatrix>,
    segment_roots: Vec<ComplexMatrix>,
}

impl Fhat<'_> {
    pub fn eval(&self, t: f64) -> Option<Vec<C64>> {
        if let Some(k) = self.measure.atoms().iter().position(|a| a.t == t) {
            return Some(self.atom_roots[k].mul_vec(&self.f.eval(t)));
        }
        let k = self.measure.segments().iter().position(|s| s.contains(t))?;
        Some(self.segment_roots[k].mul_vec(&self.f.eval(t)))
    }

    /// `Σ_j ∫ |(F̂f)_j|² d tr_M` with `panels` trapezoid panels per segment
    /// (split at the pieces of `f`); atoms are summed exactly.
    pub fn parseval_quadrature(&self, panels: usize) -> f64 {
        let mut total = 0.0;
        for (atom, root) in self.measure.atoms().iter().zip(&self.atom_roots) {
            let v = root.mul_vec(&self.f.eval(atom.t));
            total += atom.weight.trace_re() * vnorm(&v).powi(2);
        }
        for (seg, root) in self.measure.segments().iter().zip(&self.segment_roots) {
            let tr = seg.density.trace_re();
            for (lo, hi, piece) in self.f.pieces_on(seg.a, seg.b) {
                let n = ((panels as f64) * (hi - lo) / seg.length()).ceil().max(1.0) as usize;
                let integrand = |t: f64| vnorm(&root.mul_vec(&piece.eval(t))).powi(2);
                total += tr * quad::trapezoid(lo, hi, n, integrand);
            }
        }
        total
    }
}

pub fn fhat<'a>(m: &'a MatrixMeasure, f: &VectorFunction) -> Result<Fhat<'a>> {
    check_dims(m, &[f])?;
    let root = |w: &ComplexMatrix| linalg::sqrt_psd(&w.scale_real(1.0 / w.trace_re()));
    Ok(Fhat {
        measure: m,
        f: f.clone(),
        atom_roots: m.atoms().iter().map(|a| root(&a.weight)).collect::<Result<_>>()?,
        segment_roots: m.segments().iter().map(|s| root(&s.density)).collect::<Result<_>>()?,
    })
}

/// Range tolerance for `F̂⁻¹` at atoms.
const RANGE_TOL: f64 = 1e-8;
/// Relative residual allowed when refitting a segment polynomial.
const REFIT_TOL: f64 = 1e-8;

/// `f(t) = G(D_M(t)) g(t)`: exact at atoms, refitted as polynomials of the
/// given degree on segments.
pub fn fhat_inverse(m: &MatrixMeasure, g: &dyn Fn(f64) -> Vec<C64>, degree: usize) -> Result<VectorFunction> {
    if degree > DEGREE_CAP {
        return Err(Error::DegreeOverflow { degree, cap: DEGREE_CAP });
    }
    let d = m.dim();
    let mut atoms = Vec::new();
    for atom in m.atoms() {
        let density = atom.weight.scale_real(1.0 / atom.weight.trace_re());
        let v = g(atom.t);
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: v.len() });
        }
        if !linalg::in_range(&density, &v, RANGE_TOL) {
            return Err(Error::RangeViolation { t: atom.t });
        }
        atoms.push((atom.t, linalg::g_pseudo_inv_sqrt(&density)?.mul_vec(&v)));
    }
    let mut pieces = Vec::new();
    for seg in m.segments() {
        let ginv = linalg::g_pseudo_inv_sqrt(&seg.density.scale_real(1.0 / seg.density.trace_re()))?;
        let map = |t: f64| -> Result<Vec<C64>> {
            let v = g(t);
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.len() });
            }
            Ok(ginv.mul_vec(&v))
        };
        let n = degree + 1;
        let nodes: Vec<f64> = (0..n)
            .map(|k| {
                let x = (std::f64::consts::PI * (2 * k + 1) as f64 / (2 * n) as f64).cos();
                0.5 * (seg.a + seg.b) + 0.5 * (seg.b - seg.a) * x
            })
            .collect();
        let samples = nodes.iter().map(|&t| map(t)).collect::<Result<Vec<_>>>()?;
        let polys: Vec<Poly> = (0..d)
            .map(|j| {
                let ys: Vec<C64> = samples.iter().map(|s| s[j]).collect();
                Poly::interpolate(&nodes, &ys)
            })
            .collect();
        // validate on a finer grid including the endpoints
        for k in 0..=(2 * n + 2) {
            let t = seg.a + (seg.b - seg.a) * k as f64 / (2 * n + 2) as f64;
            let expected = map(t)?;
            for (p, e) in polys.iter().zip(&expected) {
                if (p.eval(t) - e).norm() > REFIT_TOL * (1.0 + e.norm()) {
                    return Err(Error::DegreeOverflow { degree: degree + 1, cap: degree });
                }
            }
        }
        pieces.push(Piece { interval: seg.interval(), polys });
    }
    VectorFunction::new(d, atoms, pieces)
}

/// Cell-average step function with `cells` equal cells per segment; atom
/// values are kept. This is the `L²(M)`-orthogonal projection onto step
/// functions on the grid.
pub fn step_approximation(m: &MatrixMeasure, f: &VectorFunction, cells: usize) -> Result<VectorFunction> {
    check_dims(m, &[f])?;
    let d = m.dim();
    let atoms = m.atoms().iter().map(|a| (a.t, f.eval(a.t))).collect();
    let mut pieces = Vec::new();
    for seg in m.segments() {
        let h = seg.length() / cells as f64;
        for k in 0..cells {
            let lo = seg.a + h * k as f64;
            let hi = if k + 1 == cells { seg.b } else { lo + h };
            let mut avg = vec![ZERO; d];
            for (a, b, piece) in f.pieces_on(lo, hi) {
                for (j, p) in piece.polys.iter().enumerate() {
                    avg[j] += p.integrate(a, b) / (hi - lo);
                }
            }
            let interval = if k == 0 { Interval::closed(lo, hi) } else { Interval::new(lo, hi, false, true) };
            pieces.push(Piece { interval, polys: avg.into_iter().map(Poly::constant).collect() });
        }
    }
    VectorFunction::new(d, atoms, pieces)
}

/// `∫ |f|² dM_ii` for scalar `f` (component 0 of a 1-dimensional function).
pub fn entry_norm_sq(m: &MatrixMeasure, i: usize, f: &VectorFunction) -> f64 {
    let atoms: f64 = m.atoms().iter().map(|a| a.weight[(i, i)].re * f.eval(a.t)[0].norm_sqr()).sum();
    let segs: f64 = m
        .segments()
        .iter()
        .map(|s| {
            let mii = s.density[(i, i)].re;
            f.pieces_on(s.a, s.b)
                .map(|(lo, hi, p)| mii * (&p.polys[0] * &p.polys[0].conj()).integrate(lo, hi).re)
                .sum::<f64>()
        })
        .sum();
    atoms + segs
}

/// Gauss nodes per sub-interval for `entry_abs_integral`.
const ABS_GAUSS_NODES: usize = 48;

/// `∫ |f₁ f₂| d|M_ij|` for scalar `f₁, f₂`; Gauss–Legendre on segments.
pub fn entry_abs_integral(m: &MatrixMeasure, i: usize, j: usize, f1: &VectorFunction, f2: &VectorFunction) -> f64 {
    let atoms: f64 = m
        .atoms()
        .iter()
        .map(|a| a.weight[(i, j)].norm() * f1.eval(a.t)[0].norm() * f2.eval(a.t)[0].norm())
        .sum();
    let mut segs = 0.0;
    for s in m.segments() {
        let w = s.density[(i, j)].norm();
        if w == 0.0 {
            continue;
        }
        for (lo, hi, p1) in f1.pieces_on(s.a, s.b) {
            for (lo2, hi2, p2) in f2.pieces_on(lo, hi) {
                segs += w * quad::gauss_on(ABS_GAUSS_NODES, lo2, hi2)
                    .map(|(t, wt)| wt * p1.polys[0].eval(t).norm() * p2.polys[0].eval(t).norm())
                    .sum::<f64>();
            }
        }
    }
    atoms + segs
}

/// Equivalence class `[f] ∈ L²(M)`.
#[derive(Debug, Clone)]
pub struct L2Class<'m> {
    pub representative: VectorFunction,
    pub measure: &'m MatrixMeasure,
}

impl<'m> L2Class<'m> {
    pub fn new(measure: &'m MatrixMeasure, representative: VectorFunction) -> Result<Self> {
        check_dims(measure, &[&representative])?;
        Ok(Self { representative, measure })
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if ptr::eq(self.measure, other.measure) || self.measure == other.measure {
            Ok(())
        } else {
            Err(Error::InvalidFunction("classes belong to different L2 spaces".into()))
        }
    }

    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.same_space(other)?;
        inner(self.measure, &self.representative, &other.representative)
    }

    pub fn norm(&self) -> f64 {
        seminorm(self.measure, &self.representative).expect("dimension checked at construction")
    }

    /// Class equality: the difference of representatives is in the zero layer.
    pub fn equals(&self, other: &Self, tol: f64) -> Result<bool> {
        self.same_space(other)?;
        let diff = self.representative.sub(&other.representative)?;
        is_zero_layer(self.measure, &diff, tol)
    }

    /// `I⁻¹_{Ω′}[f] = [f|_{Ω′}]′` on the restricted measure.
    pub fn restrict<'n>(&self, restricted: &'n MatrixMeasure, omega: &BorelSet) -> Result<L2Class<'n>> {
        L2Class::new(restricted, self.representative.restrict_to(omega))
    }
}

/// `I_{Ω′}[g]′ = [g_ext]`: extension by zero from `M_{Ω′}` to `M`.
pub fn embed_extension<'m>(m: &'m MatrixMeasure, omega: &BorelSet, g: &VectorFunction) -> Result<L2Class<'m>> {
    L2Class::new(m, g.restrict_to(omega))
}
