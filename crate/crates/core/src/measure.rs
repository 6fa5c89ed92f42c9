//! Matrix-valued measures on ℝ built from atoms and piecewise-constant
//! densities:
//!
//! ```text
//! M(ω) = Σ_{t_k ∈ ω} W_k + Σ_seg |ω ∩ [a, b]| · F_seg
//! ```
//!
//! The trace measure `tr_M` and the trace density `D_M = dM / d tr_M` are
//! available in closed form for this representation.

use crate::borel::{BorelSet, Interval};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub t: f64,
    pub weight: ComplexMatrix,
}

/// Constant density on the closed interval `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
    pub density: ComplexMatrix,
}

impl Segment {
    pub fn interval(&self) -> Interval {
        Interval::closed(self.a, self.b)
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, t: f64) -> bool {
        self.a <= t && t <= self.b
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixMeasure {
    d: usize,
    atoms: Vec<Atom>,
    segments: Vec<Segment>,
}

/// Relative trace under which an atom or segment is dropped.
const ZERO_TRACE: f64 = 1e-14;

fn check_weight(w: &ComplexMatrix, d: usize, what: &str) -> Result<()> {
    if w.rows() != d || w.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: w.rows(),
        });
    }
    if !w.is_finite() {
        return Err(Error::InvalidMeasure(format!("{what} has non-finite entries")));
    }
    if !w.is_hermitian(Tolerances::default().hermitian) {
        return Err(Error::InvalidMeasure(format!("{what} is not Hermitian")));
    }
    if !linalg::is_psd(w) {
        return Err(Error::InvalidMeasure(format!("{what} is not positive semidefinite")));
    }
    Ok(())
}

impl MatrixMeasure {
    /// Validates and normalizes: weights Hermitian PSD, atoms distinct,
    /// segments bounded with `a < b` and disjoint up to endpoints. Zero-trace
    /// atoms and segments are removed; atoms and segments are sorted.
    pub fn new(d: usize, mut atoms: Vec<Atom>, mut segments: Vec<Segment>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidMeasure("dimension must be positive".into()));
        }
        for atom in &atoms {
            if !atom.t.is_finite() {
                return Err(Error::InvalidMeasure(format!("atom at non-finite point {}", atom.t)));
            }
            check_weight(&atom.weight, d, &format!("atom weight at {}", atom.t))?;
        }
        for seg in &segments {
            if !(seg.a.is_finite() && seg.b.is_finite() && seg.a < seg.b) {
                return Err(Error::InvalidMeasure(format!("segment [{}, {}] must be bounded with a < b", seg.a, seg.b)));
            }
            check_weight(&seg.density, d, &format!("density on [{}, {}]", seg.a, seg.b))?;
        }
        let total: f64 = atoms.iter().map(|a| a.weight.trace_re()).sum::<f64>()
            + segments.iter().map(|s| s.density.trace_re() * s.length()).sum::<f64>();
        let cutoff = ZERO_TRACE * (1.0 + total);
        atoms.retain(|a| a.weight.trace_re() > cutoff);
        segments.retain(|s| s.density.trace_re() * s.length() > cutoff);
        for a in &mut atoms {
            a.weight = a.weight.hermitian_part();
        }
        for s in &mut segments {
            s.density = s.density.hermitian_part();
        }
        atoms.sort_by(|x, y| x.t.total_cmp(&y.t));
        segments.sort_by(|x, y| x.a.total_cmp(&y.a));
        if let Some(w) = atoms.windows(2).find(|w| w[0].t == w[1].t) {
            return Err(Error::InvalidMeasure(format!("duplicate atom at {}", w[0].t)));
        }
        if let Some(w) = segments.windows(2).find(|w| w[1].a < w[0].b) {
            return Err(Error::InvalidMeasure(format!(
                "segments [{}, {}] and [{}, {}] overlap",
                w[0].a, w[0].b, w[1].a, w[1].b
            )));
        }
        Ok(Self { d, atoms, segments })
    }

    pub fn empty(d: usize) -> Self {
        Self {
            d,
            atoms: Vec::new(),
            segments: Vec::new(),
        }
    }

    pub fn atomic(d: usize, atoms: Vec<(f64, ComplexMatrix)>) -> Result<Self> {
        Self::new(d, atoms.into_iter().map(|(t, weight)| Atom { t, weight }).collect(), Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.segments.is_empty()
    }

    pub fn atom_at(&self, t: f64) -> Option<&Atom> {
        self.atoms.iter().find(|a| a.t == t)
    }

    /// Closed support: segment intervals and atom points.
    pub fn support(&self) -> BorelSet {
        BorelSet::from_parts(
            self.segments.iter().map(Segment::interval).collect(),
            self.atoms.iter().map(|a| a.t).collect(),
        )
    }

    /// `M(ω)`
    pub fn evaluate(&self, omega: &BorelSet) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.d, self.d);
        for atom in self.atoms.iter().filter(|a| omega.contains(a.t)) {
            out = &out + &atom.weight;
        }
        for seg in &self.segments {
            let len = omega.leb_overlap(seg.a, seg.b);
            if len > 0.0 {
                out = &out + &seg.density.scale_real(len);
            }
        }
        out
    }

    /// `tr_M(ω)`
    pub fn trace_measure(&self, omega: &BorelSet) -> f64 {
        let atoms: f64 = self
            .atoms
            .iter()
            .filter(|a| omega.contains(a.t))
            .map(|a| a.weight.trace_re())
            .sum();
        let segs: f64 = self
            .segments
            .iter()
            .map(|s| omega.leb_overlap(s.a, s.b) * s.density.trace_re())
            .sum();
        atoms + segs
    }

    pub fn total_trace(&self) -> f64 {
        self.trace_measure(&BorelSet::real_line())
    }

    /// `D_M(t)`: normalized atom weight at an atom, normalized density inside
    /// a segment (atoms take precedence), `None` off the support.
    pub fn trace_density_at(&self, t: f64) -> Option<ComplexMatrix> {
        if let Some(atom) = self.atom_at(t) {
            return Some(atom.weight.scale_real(1.0 / atom.weight.trace_re()));
        }
        self.segments
            .iter()
            .find(|s| s.contains(t))
            .map(|s| s.density.scale_real(1.0 / s.density.trace_re()))
    }

    /// `M(ω) = 0`, decided through `tr_M(ω) ≤ tol`.
    pub fn is_zero_set(&self, omega: &BorelSet, tol: f64) -> bool {
        self.trace_measure(omega) <= tol
    }

    /// `M_{Ω′}`: atoms inside `Ω′` and segments clipped to `Ω′`.
    pub fn restrict(&self, omega: &BorelSet) -> MatrixMeasure {
        let atoms = self.atoms.iter().filter(|a| omega.contains(a.t)).cloned().collect();
        let mut segments = Vec::new();
        for seg in &self.segments {
            for iv in omega.intervals() {
                let lo = iv.lo.max(seg.a);
                let hi = iv.hi.min(seg.b);
                if lo < hi {
                    segments.push(Segment {
                        a: lo,
                        b: hi,
                        density: seg.density.clone(),
                    });
                }
            }
        }
        MatrixMeasure {
            d: self.d,
            atoms,
            segments,
        }
    }

    /// `(M_ac, M_sing)` with respect to Lebesgue measure.
    pub fn ac_sing_split(&self) -> (MatrixMeasure, MatrixMeasure) {
        (
            MatrixMeasure {
                d: self.d,
                atoms: Vec::new(),
                segments: self.segments.clone(),
            },
            MatrixMeasure {
                d: self.d,
                atoms: self.atoms.clone(),
                segments: Vec::new(),
            },
        )
    }

    /// Canonical minimal support of the absolutely continuous part.
    pub fn minimal_support_ac(&self) -> BorelSet {
        BorelSet::from_parts(self.segments.iter().map(Segment::interval).collect(), Vec::new())
    }

    /// Entry-wise total variation `|M_ij|(ω)`.
    pub fn entry_variation(&self, i: usize, j: usize, omega: &BorelSet) -> f64 {
        let atoms: f64 = self
            .atoms
            .iter()
            .filter(|a| omega.contains(a.t))
            .map(|a| a.weight[(i, j)].norm())
            .sum();
        let segs: f64 = self
            .segments
            .iter()
            .map(|s| omega.leb_overlap(s.a, s.b) * s.density[(i, j)].norm())
            .sum();
        atoms + segs
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::linalg::C64;

    pub fn real(rows: &[&[f64]]) -> ComplexMatrix {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).unwrap()
    }

    /// `[[1,0],[0,0]]` on `[-1,0]`, `[[0,0],[0,1]]` on `[0,1]`.
    pub fn example_measure() -> MatrixMeasure {
        MatrixMeasure::new(
            2,
            Vec::new(),
            vec![
                Segment {
                    a: -1.0,
                    b: 0.0,
                    density: real(&[&[1.0, 0.0], &[0.0, 0.0]]),
                },
                Segment {
                    a: 0.0,
                    b: 1.0,
                    density: real(&[&[0.0, 0.0], &[0.0, 1.0]]),
                },
            ],
        )
        .unwrap()
    }

    /// `I·dt` on `[0,1]` plus an atom `I` at 2.
    pub fn mixed_measure(d: usize) -> MatrixMeasure {
        MatrixMeasure::new(
            d,
            vec![Atom {
                t: 2.0,
                weight: ComplexMatrix::identity(d),
            }],
            vec![Segment {
                a: 0.0,
                b: 1.0,
                density: ComplexMatrix::identity(d),
            }],
        )
        .unwrap()
    }
}
