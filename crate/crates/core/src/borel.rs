//! Finite unions of intervals and isolated points of ℝ.
//!
//! Every [`BorelSet`] is kept in a unique canonical form: maximal, pairwise
//! disjoint, non-touching intervals plus isolated points lying outside all of
//! them. Boolean operations work by splitting the line at every breakpoint of
//! the operands into elementary cells (open gaps and single points), deciding
//! membership per cell and gluing adjacent members back together.

use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::PiecewiseScalarFn;

/// Interval with explicit endpoint closedness. Infinite endpoints are open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        Self {
            lo,
            hi,
            lo_closed: lo_closed && lo.is_finite(),
            hi_closed: hi_closed && hi.is_finite(),
        }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true)
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false)
    }

    pub fn real_line() -> Self {
        Self::open(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lo_closed { t >= self.lo } else { t > self.lo };
        let below = if self.hi_closed { t <= self.hi } else { t < self.hi };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi || (self.lo == self.hi && self.lo_closed && self.hi_closed))
    }

    pub fn length(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.hi - self.lo
        }
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed)
        } else if other.hi < self.hi {
            (other.hi, other.hi_closed)
        } else {
            (self.hi, self.hi_closed && other.hi_closed)
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
    }

    /// Overlap length with the closed interval `[a, b]`.
    pub fn overlap_length(&self, a: f64, b: f64) -> f64 {
        let lo = self.lo.max(a);
        let hi = self.hi.min(b);
        (hi - lo).max(0.0)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{},{}{r}", fmt_endpoint(self.lo), fmt_endpoint(self.hi))
    }
}

fn fmt_endpoint(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BorelSet {
    intervals: Vec<Interval>,
    points: Vec<f64>,
}

/// Elementary cell of the breakpoint decomposition.
#[derive(Debug, Clone, Copy)]
enum Cell {
    /// Open gap between consecutive breakpoints (possibly unbounded).
    Gap(f64, f64),
    Point(f64),
}

impl Cell {
    fn sample(&self) -> f64 {
        match *self {
            Cell::Point(p) => p,
            Cell::Gap(a, b) => match (a.is_finite(), b.is_finite()) {
                (true, true) => 0.5 * (a + b),
                (true, false) => a + 1.0,
                (false, true) => b - 1.0,
                (false, false) => 0.0,
            },
        }
    }
}

impl BorelSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn real_line() -> Self {
        Self {
            intervals: vec![Interval::real_line()],
            points: Vec::new(),
        }
    }

    /// Canonicalizes an arbitrary collection of intervals and points.
    pub fn from_parts(intervals: Vec<Interval>, points: Vec<f64>) -> Self {
        let raw = Self { intervals, points };
        let breaks = raw.breakpoints();
        Self::from_cells(&breaks, |t| raw.contains(t))
    }

    pub fn interval(iv: Interval) -> Self {
        Self::from_parts(vec![iv], Vec::new())
    }

    pub fn closed(a: f64, b: f64) -> Self {
        Self::interval(Interval::closed(a, b))
    }

    pub fn open(a: f64, b: f64) -> Self {
        Self::interval(Interval::open(a, b))
    }

    pub fn point(p: f64) -> Self {
        Self::from_parts(Vec::new(), vec![p])
    }

    pub fn points(ps: &[f64]) -> Self {
        Self::from_parts(Vec::new(), ps.to_vec())
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn isolated_points(&self) -> &[f64] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.points.is_empty()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(t)) || self.points.iter().any(|&p| p == t)
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .intervals
            .iter()
            .flat_map(|iv| [iv.lo, iv.hi])
            .chain(self.points.iter().copied())
            .filter(|x| x.is_finite())
            .collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    fn cells(breaks: &[f64]) -> Vec<Cell> {
        let mut cells = Vec::with_capacity(2 * breaks.len() + 1);
        let mut prev = f64::NEG_INFINITY;
        for &x in breaks {
            cells.push(Cell::Gap(prev, x));
            cells.push(Cell::Point(x));
            prev = x;
        }
        cells.push(Cell::Gap(prev, f64::INFINITY));
        cells
    }

    fn from_cells(breaks: &[f64], member: impl Fn(f64) -> bool) -> Self {
        let cells = Self::cells(breaks);
        let inside: Vec<bool> = cells.iter().map(|c| member(c.sample())).collect();
        let mut intervals = Vec::new();
        let mut points = Vec::new();
        let mut i = 0;
        while i < cells.len() {
            if !inside[i] {
                i += 1;
                continue;
            }
            let mut j = i;
            while j + 1 < cells.len() && inside[j + 1] {
                j += 1;
            }
            match (cells[i], cells[j]) {
                (Cell::Point(p), Cell::Point(_)) if i == j => points.push(p),
                (first, last) => {
                    let (lo, lo_closed) = match first {
                        Cell::Point(p) => (p, true),
                        Cell::Gap(a, _) => (a, false),
                    };
                    let (hi, hi_closed) = match last {
                        Cell::Point(p) => (p, true),
                        Cell::Gap(_, b) => (b, false),
                    };
                    intervals.push(Interval::new(lo, hi, lo_closed, hi_closed));
                }
            }
            i = j + 1;
        }
        Self { intervals, points }
    }

    fn combine(&self, other: &BorelSet, op: impl Fn(bool, bool) -> bool) -> BorelSet {
        let mut breaks = self.breakpoints();
        breaks.extend(other.breakpoints());
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        Self::from_cells(&breaks, |t| op(self.contains(t), other.contains(t)))
    }

    pub fn union(&self, other: &BorelSet) -> BorelSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &BorelSet) -> BorelSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn set_minus(&self, other: &BorelSet) -> BorelSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> BorelSet {
        Self::from_cells(&self.breakpoints(), |t| !self.contains(t))
    }

    pub fn is_subset(&self, other: &BorelSet) -> bool {
        self.set_minus(other).is_empty()
    }

    /// Lebesgue measure; `+∞` for unbounded sets.
    pub fn leb_measure(&self) -> f64 {
        self.intervals.iter().map(Interval::length).sum()
    }

    /// Lebesgue measure of `self ∩ [a, b]`.
    pub fn leb_overlap(&self, a: f64, b: f64) -> f64 {
        self.intervals.iter().map(|iv| iv.overlap_length(a, b)).sum()
    }

    /// Topological closure.
    pub fn closure(&self) -> BorelSet {
        let ivs = self.intervals.iter().map(|iv| Interval::closed(iv.lo, iv.hi)).collect();
        Self::from_parts(ivs, self.points.clone())
    }

    /// Points every neighbourhood of which meets the set in positive
    /// Lebesgue measure: closure of the non-degenerate intervals.
    pub fn leb_closure(&self) -> BorelSet {
        let ivs = self
            .intervals
            .iter()
            .filter(|iv| iv.length() > 0.0)
            .map(|iv| Interval::closed(iv.lo, iv.hi))
            .collect();
        Self::from_parts(ivs, Vec::new())
    }

    /// Infimum and supremum, `None` for the empty set.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        let lo = self.intervals.iter().map(|iv| iv.lo).chain(self.points.iter().copied()).reduce(f64::min)?;
        let hi = self.intervals.iter().map(|iv| iv.hi).chain(self.points.iter().copied()).reduce(f64::max)?;
        Some((lo, hi))
    }

    /// `sup |x|` over the set, 0 for the empty set.
    pub fn sup_abs(&self) -> f64 {
        self.bounds().map_or(0.0, |(lo, hi)| lo.abs().max(hi.abs()))
    }

    /// Distance from a complex number to the set (viewed inside ℂ).
    pub fn distance_to(&self, re: f64, im: f64) -> f64 {
        let from_intervals = self.intervals.iter().map(|iv| {
            let x = re.clamp(iv.lo, iv.hi);
            (re - x).hypot(im)
        });
        let from_points = self.points.iter().map(|&p| (re - p).hypot(im));
        from_intervals.chain(from_points).fold(f64::INFINITY, f64::min)
    }

    /// Parses `[0,1]u(2,3)u{5}`; `{}` or `empty` is ∅, `R` is ℝ.
    pub fn parse(text: &str) -> Result<BorelSet> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "{}" || s.eq_ignore_ascii_case("empty") {
            return Ok(Self::empty());
        }
        if s == "R" {
            return Ok(Self::real_line());
        }
        let mut intervals = Vec::new();
        let mut points = Vec::new();
        let mut offset = 0;
        for part in s.split('u') {
            let err = |message: &str| Error::Parse {
                position: offset,
                message: format!("{message} in set term `{part}`"),
            };
            let first = part.chars().next().ok_or_else(|| err("empty term"))?;
            let last = part.chars().last().unwrap_or(first);
            match (first, last) {
                ('{', '}') => {
                    let inner = &part[1..part.len() - 1];
                    for p in inner.split(',').filter(|p| !p.is_empty()) {
                        points.push(parse_real(p).ok_or_else(|| err("bad point"))?);
                    }
                }
                ('[' | '(', ']' | ')') => {
                    let inner = &part[1..part.len() - 1];
                    let (a, b) = inner.split_once(',').ok_or_else(|| err("missing comma"))?;
                    let lo = parse_real(a).ok_or_else(|| err("bad left endpoint"))?;
                    let hi = parse_real(b).ok_or_else(|| err("bad right endpoint"))?;
                    if lo > hi {
                        return Err(err("left endpoint exceeds right endpoint"));
                    }
                    intervals.push(Interval::new(lo, hi, first == '[', last == ']'));
                }
                _ => return Err(err("expected an interval or a point list")),
            }
            offset += part.len() + 1;
        }
        Ok(Self::from_parts(intervals, points))
    }
}

fn parse_real(s: &str) -> Option<f64> {
    match s {
        "inf" | "+inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse::<f64>().ok().filter(|x| x.is_finite()),
    }
}

impl serde::Serialize for BorelSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BorelSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        BorelSet::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BorelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let mut terms: Vec<(f64, String)> = self.intervals.iter().map(|iv| (iv.lo, iv.to_string())).collect();
        terms.extend(self.points.iter().map(|&p| (p, format!("{{{p}}}"))));
        terms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let parts: Vec<String> = terms.into_iter().map(|(_, s)| s).collect();
        write!(f, "{}", parts.join("u"))
    }
}

impl std::str::FromStr for BorelSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Tolerance for treating polynomial coefficients as real.
const REAL_TOL: f64 = 1e-14;

/// `F⁻¹(s) ∩ domain`.
///
/// On every interval where a piece of `F` meets `domain` the piece must be a
/// real affine polynomial; isolated points of the domain are evaluated
/// pointwise and accept any polynomial.
pub fn preimage(f: &PiecewiseScalarFn, s: &BorelSet, domain: &BorelSet) -> Result<BorelSet> {
    let mut acc = BorelSet::empty();
    let mut covered = BorelSet::empty();
    for (set, poly) in f.pieces() {
        let part = set.intersect(domain);
        covered = covered.union(set);
        if part.is_empty() {
            continue;
        }
        for &p in part.isolated_points() {
            let v = poly.eval(p);
            if v.im.abs() <= REAL_TOL * (1.0 + v.norm()) && s.contains(v.re) {
                acc = acc.union(&BorelSet::point(p));
            }
        }
        if part.intervals().is_empty() {
            continue;
        }
        let (slope, intercept) = poly.as_real_affine(REAL_TOL).ok_or_else(|| {
            Error::UnsupportedFunction(format!(
                "set-level preimage needs a real affine piece on {part}, got degree {}",
                poly.degree()
            ))
        })?;
        let pulled = affine_preimage(slope, intercept, s);
        let on_intervals = BorelSet::from_parts(part.intervals().to_vec(), Vec::new());
        acc = acc.union(&pulled.intersect(&on_intervals));
    }
    if s.contains(0.0) {
        acc = acc.union(&domain.set_minus(&covered));
    }
    Ok(acc)
}

/// `{t : m·t + c ∈ s}`
pub fn affine_preimage(slope: f64, intercept: f64, s: &BorelSet) -> BorelSet {
    if slope == 0.0 {
        return if s.contains(intercept) {
            BorelSet::real_line()
        } else {
            BorelSet::empty()
        };
    }
    let back = |y: f64| (y - intercept) / slope;
    let intervals = s
        .intervals()
        .iter()
        .map(|iv| {
            let (a, b) = (back(iv.lo), back(iv.hi));
            if slope > 0.0 {
                Interval::new(a, b, iv.lo_closed, iv.hi_closed)
            } else {
                Interval::new(b, a, iv.hi_closed, iv.lo_closed)
            }
        })
        .collect();
    let points = s.isolated_points().iter().map(|&p| back(p)).collect();
    BorelSet::from_parts(intervals, points)
}
