//! Seeded generators for property tests, the `verify` command and the
//! acceptance suite. Matrices come with planted eigenstructure so the solver
//! can be checked against an independent oracle.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::borel::{BorelSet, Interval};
use crate::l2::{Piece, VectorFunction};
use crate::linalg::{ComplexMatrix, C64, ZERO};
use crate::measure::{Atom, MatrixMeasure, Segment};
use crate::poly::Poly;
use crate::symbol::PiecewiseScalarFn;

pub type FuzzRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FuzzRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut FuzzRng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector(rng: &mut FuzzRng, n: usize) -> Vec<C64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// Complex number with both parts uniform in `[-r, r]`.
pub fn uniform_complex(rng: &mut FuzzRng, r: f64) -> C64 {
    C64::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// Haar-like unitary: a product of `n` Householder reflections times random
/// phases.
pub fn random_unitary(rng: &mut FuzzRng, n: usize) -> ComplexMatrix {
    let mut q = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
        } else {
            ZERO
        }
    });
    for _ in 0..n {
        let v = gaussian_vector(rng, n);
        let nv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if nv == 0.0 {
            continue;
        }
        let h = &ComplexMatrix::identity(n) - &ComplexMatrix::outer(&v, &v).scale_real(2.0 / nv);
        q = &h * &q;
    }
    q
}

/// `A = Q D Q*` with known eigenvalues and spectral projections.
#[derive(Debug, Clone)]
pub struct Planted {
    pub matrix: ComplexMatrix,
    /// Distinct eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub projections: Vec<ComplexMatrix>,
}

/// Distinct values in `[-3, 3]` pairwise at least `gap` apart.
fn separated_values(rng: &mut FuzzRng, k: usize, gap: f64) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[1] - w[0] >= gap) {
            return v;
        }
    }
}

/// Hermitian `n×n` matrix with at most `max_mult` repeats per eigenvalue.
pub fn planted_hermitian(rng: &mut FuzzRng, n: usize, max_mult: usize) -> Planted {
    let mut multiplicities = Vec::new();
    let mut left = n;
    while left > 0 {
        let m = rng.gen_range(1..=max_mult.max(1).min(left));
        multiplicities.push(m);
        left -= m;
    }
    let eigenvalues = separated_values(rng, multiplicities.len(), 0.05);
    let q = random_unitary(rng, n);
    let mut matrix = ComplexMatrix::zeros(n, n);
    let mut projections = Vec::new();
    let mut col = 0;
    for (&l, &m) in eigenvalues.iter().zip(&multiplicities) {
        let mut p = ComplexMatrix::zeros(n, n);
        for c in col..col + m {
            let v = q.column(c);
            p = &p + &ComplexMatrix::outer(&v, &v);
        }
        col += m;
        matrix = &matrix + &p.scale_real(l);
        projections.push(p);
    }
    Planted { matrix: matrix.hermitian_part(), eigenvalues, multiplicities, projections }
}

/// `B B*` with `B` a `d×rank` Gaussian matrix scaled by `1/d`.
pub fn random_psd(rng: &mut FuzzRng, d: usize, rank: usize) -> ComplexMatrix {
    let b = ComplexMatrix::from_fn(d, rank, |_, _| gaussian(rng));
    (&b * &b.adjoint()).scale_real(1.0 / d as f64).hermitian_part()
}

fn random_rank(rng: &mut FuzzRng, d: usize) -> usize {
    rng.gen_range(1..=d)
}

/// Point in `[-lim, lim]`, on the grid `1/4` half of the time so that
/// coincidences with other breakpoints occur.
fn breakpoint(rng: &mut FuzzRng, lim: f64) -> f64 {
    if rng.gen_bool(0.5) {
        let k = (lim * 4.0) as i64;
        rng.gen_range(-k..=k) as f64 / 4.0
    } else {
        rng.gen_range(-lim..=lim)
    }
}

/// Nonempty measure with up to `max_atoms` atoms and `max_segments` segments
/// inside `[-3, 3]`.
pub fn random_measure(rng: &mut FuzzRng, d: usize, max_atoms: usize, max_segments: usize) -> MatrixMeasure {
    loop {
        let k = rng.gen_range(0..=max_segments);
        let mut ends: Vec<f64> = (0..2 * k).map(|_| breakpoint(rng, 3.0)).collect();
        ends.sort_by(f64::total_cmp);
        let mut segments = Vec::new();
        for pair in ends.chunks(2) {
            if pair[0] < pair[1] {
                let rank = random_rank(rng, d);
                segments.push(Segment { a: pair[0], b: pair[1], density: random_psd(rng, d, rank) });
            }
        }
        let mut atoms: Vec<Atom> = Vec::new();
        for _ in 0..rng.gen_range(0..=max_atoms) {
            let t = breakpoint(rng, 3.0);
            if atoms.iter().all(|a| a.t != t) {
                let rank = random_rank(rng, d);
                atoms.push(Atom { t, weight: random_psd(rng, d, rank) });
            }
        }
        if let Ok(m) = MatrixMeasure::new(d, atoms, segments) {
            if !m.is_empty() {
                return m;
            }
        }
    }
}

/// Union of up to `max_intervals` intervals and `max_points` points in
/// `[-4, 4]`, with random closedness.
pub fn random_set(rng: &mut FuzzRng, max_intervals: usize, max_points: usize) -> BorelSet {
    let intervals = (0..rng.gen_range(0..=max_intervals))
        .map(|_| {
            let (a, b) = (breakpoint(rng, 4.0), breakpoint(rng, 4.0));
            Interval::new(a.min(b), a.max(b), rng.gen_bool(0.5), rng.gen_bool(0.5))
        })
        .collect();
    let points = (0..rng.gen_range(0..=max_points)).map(|_| breakpoint(rng, 4.0)).collect();
    BorelSet::from_parts(intervals, points)
}

pub fn random_poly(rng: &mut FuzzRng, max_degree: usize, coeff: f64) -> Poly {
    let deg = rng.gen_range(0..=max_degree);
    Poly::new((0..=deg).map(|_| uniform_complex(rng, coeff)).collect())
}

/// Piecewise-polynomial function adapted to `m`: one or two pieces per
/// segment and a value at every atom.
pub fn random_function(rng: &mut FuzzRng, m: &MatrixMeasure, max_degree: usize, coeff: f64) -> VectorFunction {
    let d = m.dim();
    let mut pieces = Vec::new();
    for seg in m.segments() {
        let polys = |rng: &mut FuzzRng| (0..d).map(|_| random_poly(rng, max_degree, coeff)).collect::<Vec<_>>();
        if rng.gen_bool(0.3) {
            let mid = rng.gen_range(seg.a..seg.b);
            pieces.push(Piece { interval: Interval::new(seg.a, mid, true, false), polys: polys(rng) });
            pieces.push(Piece { interval: Interval::closed(mid, seg.b), polys: polys(rng) });
        } else {
            pieces.push(Piece { interval: seg.interval(), polys: polys(rng) });
        }
    }
    let atoms = m.atoms().iter().map(|a| (a.t, (0..d).map(|_| uniform_complex(rng, coeff)).collect())).collect();
    VectorFunction::new(d, atoms, pieces).expect("generated function is valid")
}

/// Real affine symbol `s·x + c`; constant a fifth of the time.
pub fn random_affine_symbol(rng: &mut FuzzRng) -> (f64, f64, PiecewiseScalarFn) {
    let slope = if rng.gen_bool(0.2) { 0.0 } else { *[-2.0, -1.0, -0.5, 0.5, 1.0, 3.0].choose(rng).unwrap() };
    let intercept = breakpoint(rng, 2.0);
    (slope, intercept, PiecewiseScalarFn::affine(slope, intercept))
}

/// `d` Gaussian vectors in ℂ^n.
pub fn random_system(rng: &mut FuzzRng, n: usize, d: usize) -> Vec<Vec<C64>> {
    (0..d).map(|_| gaussian_vector(rng, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_psd;

    #[test]
    fn unitary_is_unitary() {
        let mut r = rng(1);
        for n in 1..7 {
            let q = random_unitary(&mut r, n);
            assert!((&(&q.adjoint() * &q) - &ComplexMatrix::identity(n)).norm() < 1e-13);
        }
    }

    #[test]
    fn planted_structure_is_consistent() {
        let mut r = rng(2);
        for n in 1..8 {
            let p = planted_hermitian(&mut r, n, 3);
            assert_eq!(p.multiplicities.iter().sum::<usize>(), n);
            let sum = p.projections.iter().fold(ComplexMatrix::zeros(n, n), |acc, x| &acc + x);
            assert!((&sum - &ComplexMatrix::identity(n)).norm() < 1e-12);
            for (proj, &m) in p.projections.iter().zip(&p.multiplicities) {
                assert!((proj.trace_re() - m as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn generators_are_deterministic_and_valid() {
        let a = random_measure(&mut rng(7), 2, 3, 3);
        let b = random_measure(&mut rng(7), 2, 3, 3);
        assert_eq!(a, b);
        let mut r = rng(3);
        for _ in 0..50 {
            let m = random_measure(&mut r, 3, 3, 3);
            assert!(!m.is_empty());
            for atom in m.atoms() {
                assert!(is_psd(&atom.weight));
            }
            let f = random_function(&mut r, &m, 2, 1.0);
            assert_eq!(f.dim(), 3);
            let _ = random_set(&mut r, 3, 3);
        }
    }
}
