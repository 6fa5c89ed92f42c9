//! Seeded property suites behind `matmeasure verify`.
//!
//! Every property is a function of a random generator; a suite run gives
//! each property its own generator derived from the master seed, so the
//! outcome depends only on `(seed, fuzz_cases)`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::accont;
use crate::borel::BorelSet;
use crate::cyclic::{self, HermitianOperator, VectorSystem};
use crate::error::{Error, Result};
use crate::fuzz::{self, FuzzRng};
use crate::l2::{self, VectorFunction};
use crate::linalg::{self, vnorm, ComplexMatrix, C64, ONE, ZERO};
use crate::measure::{MatrixMeasure, Segment};
use crate::multop::{MultOp, PiecewiseScalarFn};
use crate::poly::Poly;
use crate::quad;

pub type Outcome = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Linalg,
    Measure,
    L2,
    Multop,
    Cyclic,
    Accont,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 6] = [Suite::Linalg, Suite::Measure, Suite::L2, Suite::Multop, Suite::Cyclic, Suite::Accont];

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::MODULES.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Linalg => "linalg",
            Suite::Measure => "measure",
            Suite::L2 => "l2",
            Suite::Multop => "multop",
            Suite::Cyclic => "cyclic",
            Suite::Accont => "accont",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "linalg" => Suite::Linalg,
            "measure" => Suite::Measure,
            "l2" => Suite::L2,
            "multop" => Suite::Multop,
            "cyclic" => Suite::Cyclic,
            "accont" => Suite::Accont,
            "all" => Suite::All,
            other => return Err(Error::UnknownSuite(other.to_string())),
        })
    }
}

pub type Check = fn(&mut FuzzRng) -> Outcome;

#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub check: Check,
}

#[derive(Clone, Copy)]
pub struct Example {
    pub name: &'static str,
    pub check: fn() -> Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub suite: Suite,
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub fuzz_cases: usize,
    pub properties: Vec<PropertyResult>,
    pub passed: bool,
}

/// Runs the deterministic examples once and every property `fuzz_cases` times.
pub fn run(suite: Suite, seed: u64, fuzz_cases: usize) -> SuiteReport {
    let mut master = fuzz::rng(seed);
    let mut results = Vec::new();
    for member in suite.members() {
        let mut ex = PropertyResult { suite: member, name: "examples".into(), cases: 0, failures: 0, first_failure: None };
        for e in examples(member) {
            ex.cases += 1;
            if let Err(msg) = (e.check)() {
                ex.failures += 1;
                ex.first_failure.get_or_insert(format!("{}: {msg}", e.name));
            }
        }
        results.push(ex);
        for p in properties(member) {
            let mut rng = fuzz::rng(master.gen());
            let mut r = PropertyResult { suite: member, name: p.name.into(), cases: 0, failures: 0, first_failure: None };
            for case in 0..fuzz_cases {
                r.cases += 1;
                if let Err(msg) = (p.check)(&mut rng) {
                    r.failures += 1;
                    r.first_failure.get_or_insert(format!("case {case}: {msg}"));
                }
            }
            results.push(r);
        }
    }
    let passed = results.iter().all(|r| r.failures == 0);
    SuiteReport { suite, seed, fuzz_cases, properties: results, passed }
}

pub fn properties(suite: Suite) -> Vec<Property> {
    macro_rules! props {
        ($($f:ident),* $(,)?) => { vec![$(Property { name: stringify!($f), check: $f }),*] };
    }
    match suite {
        Suite::Linalg => props![
            eig_reconstruction,
            planted_eigenvalues,
            sqrt_squares_back,
            kernel_equivalence,
            sqrt_continuity,
            trace_dominates_matrix
        ],
        Suite::Measure => props![
            de_morgan,
            canonical_form_idempotent,
            leb_closure_in_closure,
            inclusion_exclusion,
            finite_additivity,
            monotonicity,
            hermitian_values,
            zero_set_agreement,
            trace_dominates_value,
            trace_density_laws,
            reconstruction_by_quadrature
        ],
        Suite::L2 => props![
            sesquilinearity,
            semi_schwarz,
            pointwise_schwarz,
            entry_schwarz,
            generalized_schwarz,
            sigma_form_equality,
            fhat_parseval,
            step_density
        ],
        Suite::Multop => props![
            product_containment,
            projection_algebra,
            norm_consistency,
            kernel_criterion,
            resolvent_identity,
            point_spectrum_in_spectrum,
            part_in_g_matches_restriction
        ],
        Suite::Cyclic => props![
            xmue_round_trip,
            cyclic_d1_projections,
            cst_matches_functional_calculus,
            monomial_density,
            cst_uniqueness,
            conjugation_chain,
            unitary_invariance,
            planted_measure_weights,
            spectral_measure_identity
        ],
        Suite::Accont => props![ac_inclusion, ac_consistency, minimal_support_canonical],
        Suite::All => Suite::MODULES.iter().flat_map(|s| properties(*s)).collect(),
    }
}

pub fn examples(suite: Suite) -> Vec<Example> {
    macro_rules! exs {
        ($($f:ident),* $(,)?) => { vec![$(Example { name: stringify!($f), check: $f }),*] };
    }
    match suite {
        Suite::Linalg => exs![ex_eig_swap, ex_sqrt_diag],
        Suite::Measure => exs![ex_measure_values, ex_set_parse],
        Suite::L2 => exs![ex_zero_layer_witness],
        Suite::Multop => exs![ex_mixed_spectrum],
        Suite::Cyclic => exs![ex_xmue_swap, ex_not_cyclic],
        Suite::Accont => exs![ex_ac_report],
        Suite::All => Suite::MODULES.iter().flat_map(|s| examples(*s)).collect(),
    }
}

// ---------------------------------------------------------------- helpers

fn real_matrix(rows: &[&[f64]]) -> ComplexMatrix {
    let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
    ComplexMatrix::from_rows(&rows).expect("rectangular")
}

/// `I` on `[0,1]` plus `I` at `2`.
pub fn canonical_mixed_measure(d: usize) -> MatrixMeasure {
    let id = ComplexMatrix::identity(d);
    MatrixMeasure::new(
        d,
        vec![crate::measure::Atom { t: 2.0, weight: id.clone() }],
        vec![Segment { a: 0.0, b: 1.0, density: id }],
    )
    .expect("valid measure")
}

/// `diag(1,0)` on `[-1,0]` and `diag(0,1)` on `[0,1]`.
pub fn split_diagonal_measure() -> MatrixMeasure {
    MatrixMeasure::new(
        2,
        Vec::new(),
        vec![
            Segment { a: -1.0, b: 0.0, density: real_matrix(&[&[1.0, 0.0], &[0.0, 0.0]]) },
            Segment { a: 0.0, b: 1.0, density: real_matrix(&[&[0.0, 0.0], &[0.0, 1.0]]) },
        ],
    )
    .expect("valid measure")
}

/// `(0,1)` on `[-1,0]`, `(1,0)` on `(0,1]`: a nonzero function of zero
/// seminorm against [`split_diagonal_measure`].
pub fn zero_layer_witness() -> VectorFunction {
    use crate::borel::Interval;
    use crate::l2::Piece;
    VectorFunction::new(
        2,
        Vec::new(),
        vec![
            Piece { interval: Interval::closed(-1.0, 0.0), polys: vec![Poly::zero(), Poly::constant(ONE)] },
            Piece { interval: Interval::new(0.0, 1.0, false, true), polys: vec![Poly::constant(ONE), Poly::zero()] },
        ],
    )
    .expect("valid function")
}

fn random_d(rng: &mut FuzzRng) -> usize {
    rng.gen_range(1..=3)
}

fn small_measure(rng: &mut FuzzRng) -> MatrixMeasure {
    let d = random_d(rng);
    fuzz::random_measure(rng, d, 3, 3)
}

/// Atoms, segment endpoints and a few random interior points.
fn sample_points(rng: &mut FuzzRng, m: &MatrixMeasure) -> Vec<f64> {
    let mut pts: Vec<f64> = m.atoms().iter().map(|a| a.t).collect();
    for s in m.segments() {
        pts.extend([s.a, s.b, 0.5 * (s.a + s.b)]);
        pts.extend((0..3).map(|_| rng.gen_range(s.a..s.b)));
    }
    pts
}

fn close(a: &[C64], b: &[C64], tol: f64) -> bool {
    let scale = 1.0 + vnorm(a).max(vnorm(b));
    vnorm(&linalg::vsub(a, b)) <= tol * scale
}

fn psd_within(a: &ComplexMatrix, tol: f64) -> std::result::Result<bool, String> {
    let (vals, _) = ok(linalg::eigh(&a.hermitian_part(), 1e-8))?;
    Ok(vals.iter().all(|&v| v >= -tol * (1.0 + a.norm())))
}

fn random_psd_any_rank(rng: &mut FuzzRng) -> ComplexMatrix {
    let d = rng.gen_range(1..=6);
    let r = rng.gen_range(1..=d);
    fuzz::random_psd(rng, d, r)
}

fn random_scalar_fn(rng: &mut FuzzRng, m: &MatrixMeasure) -> VectorFunction {
    let one = MatrixMeasure::new(
        1,
        m.atoms().iter().map(|a| crate::measure::Atom { t: a.t, weight: real_matrix(&[&[1.0]]) }).collect(),
        m.segments().iter().map(|s| Segment { a: s.a, b: s.b, density: real_matrix(&[&[1.0]]) }).collect(),
    )
    .expect("valid measure");
    fuzz::random_function(rng, &one, 2, 1.0)
}

// ----------------------------------------------------------------- linalg

fn eig_reconstruction(rng: &mut FuzzRng) -> Outcome {
    let n = rng.gen_range(1..=8);
    let p = fuzz::planted_hermitian(rng, n, 3);
    let eig = ok(linalg::eig_hermitian(&p.matrix, 1e-10))?;
    let scale = 1.0 + p.matrix.norm();
    let rec = (&eig.reconstruct() - &p.matrix).norm();
    ensure!(rec <= 1e-10 * scale, "reconstruction residual {rec:e}");
    let sum = eig.projections.iter().fold(ComplexMatrix::zeros(n, n), |acc, q| &acc + q);
    let res = (&sum - &ComplexMatrix::identity(n)).norm();
    ensure!(res <= 1e-10, "resolution of identity residual {res:e}");
    Ok(())
}

fn planted_eigenvalues(rng: &mut FuzzRng) -> Outcome {
    let n = rng.gen_range(1..=8);
    let p = fuzz::planted_hermitian(rng, n, 3);
    let eig = ok(linalg::eig_hermitian(&p.matrix, 1e-10))?;
    ensure!(eig.multiplicities() == p.multiplicities, "multiplicities {:?} vs {:?}", eig.multiplicities(), p.multiplicities);
    let scale = 1.0 + p.matrix.norm();
    for ((l, q), (pl, pq)) in eig.eigenvalues.iter().zip(&eig.projections).zip(p.eigenvalues.iter().zip(&p.projections)) {
        ensure!((l - pl).abs() <= 1e-10 * scale, "eigenvalue {l} vs planted {pl}");
        let r = (q - pq).norm();
        ensure!(r <= 1e-8, "projection mismatch {r:e}");
    }
    Ok(())
}

fn sqrt_squares_back(rng: &mut FuzzRng) -> Outcome {
    let a = random_psd_any_rank(rng);
    let s = ok(linalg::sqrt_psd(&a))?;
    let r = (&(&s * &s) - &a).norm();
    ensure!(r <= 1e-9 * (1.0 + a.norm()), "sqrt residual {r:e}");
    ensure!(psd_within(&s, 1e-10)?, "sqrt has a negative eigenvalue");
    Ok(())
}

fn kernel_equivalence(rng: &mut FuzzRng) -> Outcome {
    let a = random_psd_any_rank(rng);
    let d = a.rows();
    let w = fuzz::gaussian_vector(rng, d);
    let v = if rng.gen_bool(0.5) {
        let p = ok(linalg::range_projection(&a))?;
        linalg::vsub(&w, &p.mul_vec(&w))
    } else {
        w
    };
    if vnorm(&v) < 1e-6 {
        return Ok(());
    }
    let tol = 1e-8;
    let s = ok(linalg::sqrt_psd(&a))?;
    let k1 = linalg::in_kernel(&a, &v, tol);
    let k2 = linalg::in_kernel(&s, &v, tol);
    let form = linalg::vdot(&a.mul_vec(&v), &v).norm();
    let k3 = form <= tol * (1.0 + a.norm()) * vnorm(&v).powi(2);
    ensure!(k1 == k2 && k2 == k3, "kernel tests disagree: {k1} {k2} {k3}");
    Ok(())
}

fn sqrt_continuity(rng: &mut FuzzRng) -> Outcome {
    let a = random_psd_any_rank(rng);
    let e = fuzz::random_psd(rng, a.rows(), 1);
    let e = e.scale_real(1e-6 / e.norm().max(f64::MIN_POSITIVE));
    let s0 = ok(linalg::sqrt_psd(&a))?;
    let s1 = ok(linalg::sqrt_psd(&(&a + &e)))?;
    let r = (&s1 - &s0).norm();
    ensure!(r <= 1e-2, "sqrt moved by {r:e}");
    Ok(())
}

fn trace_dominates_matrix(rng: &mut FuzzRng) -> Outcome {
    let a = random_psd_any_rank(rng);
    let gap = &ComplexMatrix::identity(a.rows()).scale_real(a.trace_re()) - &a;
    ensure!(psd_within(&gap, 1e-12)?, "tr(A)·I − A is not PSD");
    Ok(())
}

// ---------------------------------------------------------------- measure

fn de_morgan(rng: &mut FuzzRng) -> Outcome {
    let a = fuzz::random_set(rng, 6, 4);
    let b = fuzz::random_set(rng, 6, 4);
    ensure!(a.union(&b).complement() == a.complement().intersect(&b.complement()), "∁(a∪b) ≠ ∁a∩∁b for {a}, {b}");
    ensure!(a.intersect(&b).complement() == a.complement().union(&b.complement()), "∁(a∩b) ≠ ∁a∪∁b for {a}, {b}");
    ensure!(a.complement().complement() == a, "∁∁a ≠ a for {a}");
    Ok(())
}

fn canonical_form_idempotent(rng: &mut FuzzRng) -> Outcome {
    let a = fuzz::random_set(rng, 6, 4);
    let again = BorelSet::from_parts(a.intervals().to_vec(), a.isolated_points().to_vec());
    ensure!(again == a, "re-canonicalizing {a} gives {again}");
    let parsed = ok(BorelSet::parse(&a.to_string()))?;
    ensure!(parsed == a, "parse(display) of {a} gives {parsed}");
    ensure!(a.union(&a) == a && a.intersect(&a) == a, "union/intersection not idempotent on {a}");
    Ok(())
}

fn leb_closure_in_closure(rng: &mut FuzzRng) -> Outcome {
    let g = fuzz::random_set(rng, 6, 4);
    ensure!(g.leb_closure().is_subset(&g.closure()), "leb_closure({g}) ⊄ closure");
    Ok(())
}

fn inclusion_exclusion(rng: &mut FuzzRng) -> Outcome {
    let a = fuzz::random_set(rng, 6, 4);
    let b = fuzz::random_set(rng, 6, 4);
    let lhs = a.union(&b).leb_measure() + a.intersect(&b).leb_measure();
    let rhs = a.leb_measure() + b.leb_measure();
    ensure!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs), "inclusion–exclusion: {lhs} vs {rhs}");
    Ok(())
}

fn finite_additivity(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let w1 = fuzz::random_set(rng, 4, 3);
    let w2 = fuzz::random_set(rng, 4, 3).set_minus(&w1);
    let lhs = m.evaluate(&w1.union(&w2));
    let rhs = &m.evaluate(&w1) + &m.evaluate(&w2);
    let r = (&lhs - &rhs).norm();
    ensure!(r <= 1e-12 * (1.0 + m.total_trace()), "additivity residual {r:e}");
    Ok(())
}

fn monotonicity(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let big = fuzz::random_set(rng, 4, 3);
    let small = big.intersect(&fuzz::random_set(rng, 4, 3));
    let gap = &m.evaluate(&big) - &m.evaluate(&small);
    ensure!(psd_within(&gap, 1e-12)?, "M(ω) − M(ω′) is not PSD");
    Ok(())
}

fn hermitian_values(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let w = fuzz::random_set(rng, 4, 3);
    let v = m.evaluate(&w);
    ensure!(v.hermitian_defect() <= 1e-14 * (1.0 + v.norm()), "M(ω) not Hermitian");
    Ok(())
}

/// A set that is `M`-null half of the time: a random set with the support
/// removed, plus segment endpoints that are not atoms.
fn maybe_null_set(rng: &mut FuzzRng, m: &MatrixMeasure) -> BorelSet {
    let w = fuzz::random_set(rng, 4, 3);
    if rng.gen_bool(0.5) {
        return w;
    }
    let ends: Vec<f64> = m
        .segments()
        .iter()
        .flat_map(|s| [s.a, s.b])
        .filter(|t| m.atom_at(*t).is_none())
        .collect();
    w.set_minus(&m.support()).union(&BorelSet::points(&ends))
}

fn zero_set_agreement(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    for _ in 0..20 {
        let w = maybe_null_set(rng, &m);
        let tol = 1e-12;
        let zero = m.is_zero_set(&w, tol);
        let small = m.evaluate(&w).norm() <= tol;
        ensure!(zero == small, "is_zero_set({w}) = {zero} but ‖M(ω)‖ small = {small}");
    }
    Ok(())
}

fn trace_dominates_value(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let w = fuzz::random_set(rng, 4, 3);
    let v = m.evaluate(&w);
    let gap = &ComplexMatrix::identity(m.dim()).scale_real(m.trace_measure(&w)) - &v;
    ensure!(psd_within(&gap, 1e-12)?, "tr_M(ω)·I − M(ω) is not PSD");
    Ok(())
}

fn trace_density_laws(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let mut pts: Vec<f64> = m.atoms().iter().map(|a| a.t).collect();
    pts.extend(m.segments().iter().map(|s| 0.5 * (s.a + s.b)));
    for t in pts {
        let dm = m.trace_density_at(t).ok_or_else(|| format!("no density at {t}"))?;
        ensure!(dm.hermitian_defect() <= 1e-14, "D_M({t}) not Hermitian");
        ensure!((dm.trace_re() - 1.0).abs() <= 1e-12, "tr D_M({t}) = {}", dm.trace_re());
        let (vals, _) = ok(linalg::eigh(&dm, 1e-10))?;
        ensure!(
            vals.iter().all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v)),
            "D_M({t}) spectrum {vals:?} outside [0,1]"
        );
    }
    Ok(())
}

fn reconstruction_by_quadrature(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let w = fuzz::random_set(rng, 4, 3);
    let mut total = ComplexMatrix::zeros(m.dim(), m.dim());
    for a in m.atoms().iter().filter(|a| w.contains(a.t)) {
        total = &total + &a.weight;
    }
    for s in m.segments() {
        // midpoint rule on the indicator of ω
        let cells = 20_000;
        let h = s.length() / cells as f64;
        let inside = (0..cells).filter(|k| w.contains(s.a + h * (*k as f64 + 0.5))).count();
        total = &total + &s.density.scale_real(h * inside as f64);
    }
    let r = (&total - &m.evaluate(&w)).norm();
    ensure!(r <= 1e-3 * (1.0 + m.total_trace()), "quadrature reconstruction residual {r:e}");
    Ok(())
}

// --------------------------------------------------------------------- l2

fn sesquilinearity(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let f = fuzz::random_function(rng, &m, 2, 1.0);
    let g = fuzz::random_function(rng, &m, 2, 1.0);
    let h = fuzz::random_function(rng, &m, 2, 1.0);
    let z = fuzz::uniform_complex(rng, 2.0);
    let lhs = ok(l2::inner(&m, &ok(f.lin_comb(z, &h, ONE))?, &g))?;
    let rhs = z * ok(l2::inner(&m, &f, &g))? + ok(l2::inner(&m, &h, &g))?;
    let scale = 1.0 + ok(l2::seminorm(&m, &g))? * (1.0 + z.norm()) * (1.0 + ok(l2::seminorm(&m, &f))? + ok(l2::seminorm(&m, &h))?);
    ensure!((lhs - rhs).norm() <= 1e-12 * scale, "linearity defect {:e}", (lhs - rhs).norm());
    let fg = ok(l2::inner(&m, &f, &g))?;
    let gf = ok(l2::inner(&m, &g, &f))?;
    ensure!((fg - gf.conj()).norm() <= 1e-12 * scale, "conjugate symmetry defect {:e}", (fg - gf.conj()).norm());
    Ok(())
}

fn semi_schwarz(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let f = fuzz::random_function(rng, &m, 2, 1.0);
    let g = fuzz::random_function(rng, &m, 2, 1.0);
    let lhs = ok(l2::inner(&m, &f, &g))?.norm();
    let rhs = ok(l2::seminorm(&m, &f))? * ok(l2::seminorm(&m, &g))?;
    ensure!(lhs <= rhs + 1e-12 * (1.0 + rhs), "|⟨f,g⟩| = {lhs} > {rhs}");
    Ok(())
}

fn pointwise_schwarz(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let f = fuzz::random_function(rng, &m, 2, 1.0);
    let g = fuzz::random_function(rng, &m, 2, 1.0);
    for t in sample_points(rng, &m) {
        let (Some(fg), Some(ff), Some(gg)) = (l2::gamma(&m, &f, &g, t), l2::gamma(&m, &f, &f, t), l2::gamma(&m, &g, &g, t))
        else {
            return Err(format!("γ undefined at support point {t}"));
        };
        let rhs = (ff.re.max(0.0) * gg.re.max(0.0)).sqrt();
        ensure!(fg.norm() <= rhs + 1e-12 * (1.0 + rhs), "|γ_fg({t})| = {} > {rhs}", fg.norm());
    }
    Ok(())
}

fn entry_schwarz(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let w = fuzz::random_set(rng, 4, 3);
    let v = m.evaluate(&w);
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            let lhs = m.entry_variation(i, j, &w);
            let rhs = (v[(i, i)].re.max(0.0) * v[(j, j)].re.max(0.0)).sqrt();
            ensure!(lhs <= rhs + 1e-12 * (1.0 + rhs), "|M_{i}{j}|(ω) = {lhs} > {rhs}");
        }
    }
    Ok(())
}

fn generalized_schwarz(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let f1 = random_scalar_fn(rng, &m);
    let f2 = random_scalar_fn(rng, &m);
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            let lhs = l2::entry_abs_integral(&m, i, j, &f1, &f2);
            let rhs = (l2::entry_norm_sq(&m, i, &f1) * l2::entry_norm_sq(&m, j, &f2)).sqrt();
            ensure!(lhs - rhs <= 1e-12 * (1.0 + rhs), "∫|f₁f₂|d|M_{i}{j}| = {lhs} > {rhs}");
        }
    }
    Ok(())
}

fn sigma_form_equality(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let f = fuzz::random_function(rng, &m, 2, 1.0);
    let g = fuzz::random_function(rng, &m, 2, 1.0);
    let a = ok(l2::inner(&m, &f, &g))?;
    let b = ok(l2::sigma_inner(&m, &f, &g))?;
    ensure!((a - b).norm() <= 1e-12, "|sigma_inner − inner| = {:e}", (a - b).norm());
    Ok(())
}

/// Parseval defect `|‖f‖² − quadrature|` for `F̂f` at the given panel counts.
pub fn parseval_defects(m: &MatrixMeasure, f: &VectorFunction, panels: &[usize]) -> Result<Vec<f64>> {
    let exact = l2::seminorm(m, f)?.powi(2);
    let fh = l2::fhat(m, f)?;
    Ok(panels.iter().map(|&n| (fh.parseval_quadrature(n) - exact).abs()).collect())
}

fn fhat_parseval(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let f = fuzz::random_function(rng, &m, 2, 1.0);
    let exact = ok(l2::seminorm(&m, &f))?.powi(2);
    let defects = ok(parseval_defects(&m, &f, &[1024, 4096]))?;
    // rounding floor once the discretization error is gone
    let floor = 1e-13 * (1.0 + exact);
    ensure!(defects[1] <= 1e-6 * (1.0 + exact), "defect {:e} at 4096 panels", defects[1]);
    ensure!(defects[1] <= defects[0] + floor, "refinement increased the defect: {defects:?}");
    Ok(())
}

/// Up to two unit-length segments `[k, k+1]` with trace-one densities.
fn unit_segment_measure(rng: &mut FuzzRng) -> MatrixMeasure {
    let d = random_d(rng);
    let mut ks: Vec<i32> = (-3..3).collect();
    ks.shuffle(rng);
    ks.truncate(rng.gen_range(1..=2));
    let segments = ks
        .iter()
        .map(|&k| {
            let r = rng.gen_range(1..=d);
            let w = fuzz::random_psd(rng, d, r);
            Segment { a: k as f64, b: k as f64 + 1.0, density: w.scale_real(1.0 / w.trace_re()) }
        })
        .collect();
    MatrixMeasure::new(d, Vec::new(), segments).expect("valid measure")
}

/// Quadratic in the local coordinate `t − a` with coefficients of size at
/// most `1/2`, so the slope stays bounded on every segment.
fn local_quadratic(rng: &mut FuzzRng, a: f64) -> Poly {
    let q = fuzz::random_poly(rng, 2, 0.5);
    let s = Poly::affine(1.0, -a);
    q.coeffs().iter().enumerate().fold(Poly::zero(), |acc, (k, &c)| &acc + &s.pow(k as u32).scale(c))
}

/// `‖f − S_n f‖_M` for `n = 1, 2, 4, …, 1024` cells per segment.
pub fn step_errors(m: &MatrixMeasure, f: &VectorFunction) -> Result<Vec<f64>> {
    (0..=10)
        .map(|k| {
            let s = l2::step_approximation(m, f, 1 << k)?;
            l2::seminorm(m, &f.sub(&s)?)
        })
        .collect()
}

fn step_density(rng: &mut FuzzRng) -> Outcome {
    let m = unit_segment_measure(rng);
    let pieces = m
        .segments()
        .iter()
        .map(|s| crate::l2::Piece { interval: s.interval(), polys: (0..m.dim()).map(|_| local_quadratic(rng, s.a)).collect() })
        .collect();
    let f = ok(VectorFunction::new(m.dim(), Vec::new(), pieces))?;
    let errs = ok(step_errors(&m, &f))?;
    for w in errs.windows(2) {
        ensure!(w[1] <= w[0] * (1.0 + 1e-9) + 1e-12, "step error increased: {errs:?}");
    }
    ensure!(errs[10] < 1e-3, "error {:e} at 1024 cells", errs[10]);
    Ok(())
}

// ----------------------------------------------------------------- multop

fn product_containment(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let f = fuzz::random_function(rng, &m, 2, 1.0);
    let sf = PiecewiseScalarFn::polynomial(fuzz::random_poly(rng, 2, 1.0));
    let sg = PiecewiseScalarFn::polynomial(fuzz::random_poly(rng, 2, 1.0));
    let tf = MultOp::new(m.clone(), sf.clone());
    let tg = MultOp::new(m.clone(), sg.clone());
    let tfg = MultOp::new(m.clone(), sf.mul(&sg));
    let lhs = ok(tf.apply(&ok(tg.apply(&f))?))?;
    let rhs = ok(tfg.apply(&f))?;
    for t in sample_points(rng, &m) {
        ensure!(close(&lhs.eval(t), &rhs.eval(t), 1e-12), "T_F T_G f ≠ T_FG f at {t}");
    }
    Ok(())
}

fn projection_algebra(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let (_, _, sym) = fuzz::random_affine_symbol(rng);
    let op = MultOp::new(m.clone(), sym);
    let w1 = fuzz::random_set(rng, 4, 3);
    let w2 = fuzz::random_set(rng, 4, 3);
    let f = fuzz::random_function(rng, &m, 2, 1.0);
    let scale = 1.0 + ok(l2::seminorm(&m, &f))?;
    let p1 = ok(op.spectral_projection(&w1))?;
    let p2 = ok(op.spectral_projection(&w2))?;
    let p12 = ok(op.spectral_projection(&w1.intersect(&w2)))?;
    let composed = ok(p1.apply(&ok(p2.apply(&f))?))?;
    let direct = ok(p12.apply(&f))?;
    let r = ok(l2::seminorm(&m, &ok(composed.sub(&direct))?))?;
    ensure!(r <= 1e-12 * scale, "E(ω)E(ω′) ≠ E(ω∩ω′): {r:e}");
    let once = ok(p1.apply(&f))?;
    let twice = ok(p1.apply(&once))?;
    let r = ok(l2::seminorm(&m, &ok(twice.sub(&once))?))?;
    ensure!(r <= 1e-12 * scale, "E(ω)² ≠ E(ω): {r:e}");
    Ok(())
}

fn norm_consistency(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let (_, _, sym) = fuzz::random_affine_symbol(rng);
    let op = MultOp::new(m.clone(), sym);
    let f = fuzz::random_function(rng, &m, 2, 1.0);
    let n = ok(l2::seminorm(&m, &f))?;
    if n < 1e-9 {
        return Ok(());
    }
    let unit = f.scale(C64::new(1.0 / n, 0.0));
    let image = ok(l2::seminorm(&m, &ok(op.apply(&unit))?))?;
    let bound = ok(op.op_norm())?;
    ensure!(image <= bound + 1e-10, "‖T_F f‖ = {image} > ‖T_F‖ = {bound}");
    Ok(())
}

fn kernel_criterion(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let c = match m.atoms() {
        atoms if !atoms.is_empty() && rng.gen_bool(0.5) => atoms[rng.gen_range(0..atoms.len())].t,
        _ => fuzz::random_set(rng, 0, 1).isolated_points().first().copied().unwrap_or(0.3),
    };
    let op = MultOp::new(m.clone(), PiecewiseScalarFn::affine(1.0, -c));
    let charged = m.trace_measure(&BorelSet::point(c)) > 0.0;
    // the best witness is supported at {c} along a non-kernel direction
    let v = m.atom_at(c).map(|a| a.weight.column((0..m.dim()).max_by(|&i, &j| a.weight[(i, i)].re.total_cmp(&a.weight[(j, j)].re)).unwrap_or(0)));
    let v = v.unwrap_or_else(|| linalg::unit(m.dim(), 0));
    let witness = VectorFunction::indicator(&BorelSet::point(c), &v);
    let nonzero = ok(l2::seminorm(&m, &witness))? > 1e-12;
    let killed = ok(l2::seminorm(&m, &ok(op.apply(&witness))?))? <= 1e-12;
    ensure!(killed, "T_(x−c) does not kill the witness at {c}");
    ensure!(nonzero == charged, "kernel nontrivial = {nonzero} but M({{{c}}}) ≠ 0 is {charged}");
    let in_point_spectrum = ok(op.point_spectrum())?.contains(0.0);
    ensure!(in_point_spectrum == charged || m.segments().is_empty() && !charged, "0 ∈ σ_p = {in_point_spectrum}, charged = {charged}");
    Ok(())
}

fn resolvent_identity(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let (_, _, sym) = fuzz::random_affine_symbol(rng);
    let op = MultOp::new(m.clone(), sym.clone());
    let lambda0 = C64::new(rng.gen_range(-6.0..6.0), rng.gen_range(-2.0..2.0));
    let res = match op.resolvent_symbol(lambda0, 1e-6) {
        Ok(r) => r,
        Err(Error::InSpectrum { .. }) => return Ok(()),
        Err(e) => return Err(e.to_string()),
    };
    let f = fuzz::random_function(rng, &m, 2, 1.0);
    let mut pts: Vec<f64> = m.atoms().iter().map(|a| a.t).collect();
    for s in m.segments() {
        pts.extend(quad::gauss_on(8, s.a, s.b).map(|(t, _)| t));
    }
    for t in pts {
        let hf = res.apply_at(&f, t);
        let back: Vec<C64> = hf.iter().map(|z| (sym.eval(t) - lambda0) * z).collect();
        ensure!(close(&back, &f.eval(t), 1e-10), "(F − λ₀)Hf ≠ f at {t}");
    }
    Ok(())
}

fn point_spectrum_in_spectrum(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let (_, _, sym) = fuzz::random_affine_symbol(rng);
    let op = MultOp::new(m, sym);
    let sp = ok(op.point_spectrum())?;
    let s = ok(op.spectrum())?;
    ensure!(sp.is_subset(&s), "σ_p = {sp} ⊄ σ = {s}");
    Ok(())
}

fn part_in_g_matches_restriction(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let g = fuzz::random_set(rng, 3, 2);
    let tx = MultOp::identity_symbol(m.clone());
    let part = ok(tx.part_in_g(&g))?;
    let restricted = m.restrict(&g);
    let direct = MultOp::identity_symbol(restricted.clone());
    for _ in 0..20 {
        let f = fuzz::random_function(rng, &m, 2, 1.0);
        let a = ok(part.apply(&f))?;
        let b = ok(direct.apply(&f))?;
        let r = ok(l2::seminorm(&restricted, &ok(a.sub(&b))?))?;
        ensure!(r <= 1e-10, "(T_x)_G differs from T_x on M_G by {r:e}");
        // embed ∘ restrict is isometric on classes living in G
        let g_part = f.restrict_to(&g);
        let n_small = ok(l2::seminorm(&restricted, &g_part))?;
        let n_big = ok(l2::seminorm(&m, &g_part))?;
        ensure!((n_small - n_big).abs() <= 1e-12 * (1.0 + n_big), "restriction is not isometric: {n_small} vs {n_big}");
    }
    Ok(())
}

// ----------------------------------------------------------------- cyclic

/// Planted Hermitian operator with a cyclic system of `d` vectors; `None`
/// if 20 draws were not cyclic.
pub fn random_cyclic_pair(rng: &mut FuzzRng, n: usize, d: usize) -> Option<(HermitianOperator, VectorSystem, fuzz::Planted)> {
    for _ in 0..20 {
        let p = fuzz::planted_hermitian(rng, n, d);
        let a = HermitianOperator::new(p.matrix.clone(), 1e-10).ok()?;
        let phi = VectorSystem::new(n, fuzz::random_system(rng, n, d)).ok()?;
        if cyclic::cyclicity_rank(&a, &phi).ok()? == n {
            return Some((a, phi, p));
        }
    }
    None
}

fn random_pair(rng: &mut FuzzRng) -> std::result::Result<(HermitianOperator, VectorSystem, fuzz::Planted), String> {
    let n = rng.gen_range(1..=8);
    let d = rng.gen_range(1..=3);
    random_cyclic_pair(rng, n, d).ok_or_else(|| format!("no cyclic system found for n={n} d={d}"))
}

fn xmue_round_trip(rng: &mut FuzzRng) -> Outcome {
    let (a, phi, _) = random_pair(rng)?;
    let omegas: Vec<BorelSet> = (0..5).map(|_| fuzz::random_set(rng, 3, 2)).collect();
    let r = ok(cyclic::verify_xmue(&a, &phi, 1e-9, &omegas))?;
    ensure!(r.passed, "xMUE residual {:e} above {:e}", r.max_residual, r.threshold);
    Ok(())
}

fn cyclic_d1_projections(rng: &mut FuzzRng) -> Outcome {
    let n = rng.gen_range(1..=8);
    let (a, phi, _) = random_cyclic_pair(rng, n, 1).ok_or("no cyclic vector found")?;
    let cst = ok(cyclic::build_cst(&a, &phi))?;
    for _ in 0..20 {
        let w = fuzz::random_set(rng, 3, 2);
        let e = a.spectral_projection(&w);
        let mut an = phi.vectors()[0].clone();
        for k in 0..n {
            let lhs = e.mul_vec(&an);
            let rhs = ok(cyclic::apply_cst(&cst, &VectorFunction::vector_monomial(1, 0, k).restrict_to(&w)))?;
            let r = vnorm(&linalg::vsub(&lhs, &rhs));
            ensure!(r <= 1e-10 * (1.0 + vnorm(&an)), "E_A(ω)Aⁿφ ≠ U[χ_ω xⁿ] for n={k}: {r:e}");
            an = a.matrix().mul_vec(&an);
        }
    }
    Ok(())
}

fn cst_matches_functional_calculus(rng: &mut FuzzRng) -> Outcome {
    let n = rng.gen_range(1..=8);
    let d = rng.gen_range(1..=3);
    let p = fuzz::planted_hermitian(rng, n, 3);
    let a = ok(HermitianOperator::new(p.matrix, 1e-10))?;
    let phi = ok(VectorSystem::new(n, fuzz::random_system(rng, n, d)))?;
    let cst = ok(cyclic::build_cst(&a, &phi))?;
    let f = if rng.gen_bool(0.5) {
        ok(VectorFunction::on_set(&BorelSet::real_line(), (0..d).map(|_| fuzz::random_poly(rng, 3, 1.0)).collect()))?
    } else {
        fuzz::random_function(rng, &cst.measure, 0, 1.0)
    };
    let u = ok(cyclic::apply_cst(&cst, &f))?;
    let oracle = ok(cyclic::w_tilde(&a, &phi, &f))?;
    ensure!(close(&u, &oracle, 1e-10), "U[f] differs from Σ f_j(A)φ_j");
    let sn = ok(l2::seminorm(&cst.measure, &f))?;
    ensure!((vnorm(&u) - sn).abs() <= 1e-10 * (1.0 + sn), "‖U[f]‖ = {} vs |||f||| = {sn}", vnorm(&u));
    Ok(())
}

/// Coordinates of `[x_j^n]`, `n < N`, as columns; with the images `A^n φ_j`.
fn monomial_data(a: &HermitianOperator, phi: &VectorSystem, cst: &cyclic::Cst) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let mut coords = Vec::new();
    let mut images = Vec::new();
    for j in 0..phi.d() {
        let mut an = phi.vectors()[j].clone();
        for k in 0..a.dim() {
            coords.push(cst.coordinates(&VectorFunction::vector_monomial(phi.d(), j, k))?);
            images.push(an.clone());
            an = a.matrix().mul_vec(&an);
        }
    }
    Ok((ComplexMatrix::from_columns(cst.k(), &coords), ComplexMatrix::from_columns(a.dim(), &images)))
}

fn monomial_density(rng: &mut FuzzRng) -> Outcome {
    let (a, phi, _) = random_pair(rng)?;
    let cst = ok(cyclic::build_cst(&a, &phi))?;
    let (coords, _) = ok(monomial_data(&a, &phi, &cst))?;
    let rank = linalg::independent_columns(&coords, 1e-10).len();
    ensure!(rank == cst.k(), "monomials span {rank} of {} dimensions", cst.k());
    Ok(())
}

fn cst_uniqueness(rng: &mut FuzzRng) -> Outcome {
    let (a, phi, _) = random_pair(rng)?;
    let cst = ok(cyclic::build_cst(&a, &phi))?;
    let (coords, images) = ok(monomial_data(&a, &phi, &cst))?;
    let cols = linalg::independent_columns(&coords, 1e-10);
    ensure!(cols.len() == cst.k(), "monomial coordinates are rank deficient");
    let c = ComplexMatrix::from_columns(cst.k(), &cols.iter().map(|&j| coords.column(j)).collect::<Vec<_>>());
    let y = ComplexMatrix::from_columns(a.dim(), &cols.iter().map(|&j| images.column(j)).collect::<Vec<_>>());
    // U C = Y  ⇔  C* U* = Y*
    let ustar = linalg::solve(&c.adjoint(), &y.adjoint()).ok_or("singular coordinate block")?;
    let inv = linalg::solve(&c, &ComplexMatrix::identity(cst.k())).ok_or("singular coordinate block")?;
    let kappa = c.norm() * inv.norm();
    let r = (&ustar.adjoint() - &cst.matrix).norm();
    ensure!(r <= 1e-12 * kappa.max(1.0), "reconstructed U differs by {r:e} (condition {kappa:e})");
    Ok(())
}

fn conjugation_chain(rng: &mut FuzzRng) -> Outcome {
    let (a, phi, _) = random_pair(rng)?;
    let cst = ok(cyclic::build_cst(&a, &phi))?;
    let ustar = cst.matrix.adjoint();
    let t = cst.multiplication_matrix();
    for v0 in phi.vectors() {
        let mut v = v0.clone();
        for _ in 0..a.dim() {
            let lhs = ustar.mul_vec(&a.matrix().mul_vec(&v));
            let rhs = t.mul_vec(&ustar.mul_vec(&v));
            let r = vnorm(&linalg::vsub(&lhs, &rhs));
            ensure!(r <= 1e-10 * (1.0 + a.matrix().norm()) * (1.0 + vnorm(&v)), "U⁻¹A v ≠ T_x U⁻¹ v: {r:e}");
            v = a.matrix().mul_vec(&v);
        }
    }
    Ok(())
}

fn unitary_invariance(rng: &mut FuzzRng) -> Outcome {
    let n = rng.gen_range(1..=8);
    let d = rng.gen_range(1..=3);
    let p = fuzz::planted_hermitian(rng, n, 3);
    let vs = fuzz::random_system(rng, n, d);
    let v = fuzz::random_unitary(rng, n);
    let a = ok(HermitianOperator::new(p.matrix.clone(), 1e-10))?;
    let b = ok(HermitianOperator::new(&(&v * &p.matrix) * &v.adjoint(), 1e-10))?;
    let m1 = ok(cyclic::spectral_matrix_measure(&a, &ok(VectorSystem::new(n, vs.clone()))?))?;
    let m2 = ok(cyclic::spectral_matrix_measure(&b, &ok(VectorSystem::new(n, vs.iter().map(|x| v.mul_vec(x)).collect()))?))?;
    ensure!(m1.atoms().len() == m2.atoms().len(), "atom counts differ");
    let scale = 1.0 + m1.total_trace();
    for (x, y) in m1.atoms().iter().zip(m2.atoms()) {
        ensure!((x.t - y.t).abs() <= 1e-10 * (1.0 + p.matrix.norm()), "atom {} vs {}", x.t, y.t);
        let r = (&x.weight - &y.weight).norm();
        ensure!(r <= 1e-10 * scale, "weights differ by {r:e}");
    }
    Ok(())
}

fn planted_measure_weights(rng: &mut FuzzRng) -> Outcome {
    let n = rng.gen_range(1..=8);
    let d = rng.gen_range(1..=3);
    let p = fuzz::planted_hermitian(rng, n, 3);
    let vs = fuzz::random_system(rng, n, d);
    let a = ok(HermitianOperator::new(p.matrix.clone(), 1e-10))?;
    let m = ok(cyclic::spectral_matrix_measure(&a, &ok(VectorSystem::new(n, vs.clone()))?))?;
    ensure!(m.atoms().len() == p.eigenvalues.len(), "{} atoms for {} eigenvalues", m.atoms().len(), p.eigenvalues.len());
    let scale = 1.0 + p.matrix.norm();
    let gram_scale = 1.0 + vs.iter().map(|x| vnorm(x).powi(2)).sum::<f64>();
    for ((atom, &l), proj) in m.atoms().iter().zip(&p.eigenvalues).zip(&p.projections) {
        ensure!((atom.t - l).abs() <= 1e-10 * scale, "atom {} vs planted {l}", atom.t);
        let expected = ComplexMatrix::from_fn(d, d, |i, j| linalg::vdot(&proj.mul_vec(&vs[j]), &vs[i]));
        let r = (&atom.weight - &expected).norm();
        ensure!(r <= 1e-9 * gram_scale, "weight at {l} off by {r:e}");
    }
    Ok(())
}

fn spectral_measure_identity(rng: &mut FuzzRng) -> Outcome {
    let n = rng.gen_range(1..=8);
    let p = fuzz::planted_hermitian(rng, n, 3);
    let a = ok(HermitianOperator::new(p.matrix, 1e-10))?;
    let x = fuzz::gaussian_vector(rng, n);
    let y = fuzz::gaussian_vector(rng, n);
    let r = ok(cyclic::check_spectral_measure_identity(&a, &x, &y, |t| C64::new(t, 0.0), |t| C64::new(t * t, 0.0)))?;
    let scale = (1.0 + a.matrix().norm()).powi(3) * vnorm(&x) * vnorm(&y);
    ensure!(r <= 1e-11 * scale, "identity residual {r:e}");
    Ok(())
}

// ----------------------------------------------------------------- accont

/// Random `G` inside the canonical minimal support avoiding atoms, so the
/// inclusion theorem applies.
pub fn admissible_g(rng: &mut FuzzRng, m: &MatrixMeasure) -> BorelSet {
    let atoms = BorelSet::points(&m.atoms().iter().map(|a| a.t).collect::<Vec<_>>());
    fuzz::random_set(rng, 4, 3).intersect(&m.minimal_support_ac()).set_minus(&atoms)
}

fn ac_inclusion(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let g = if rng.gen_bool(0.8) { admissible_g(rng, &m) } else { fuzz::random_set(rng, 4, 3) };
    let r = accont::ac_report(&m, &g);
    ensure!(!r.hypotheses_hold || r.inclusion_holds, "Ḡ^Leb = {} ⊄ σ_ac = {} for G = {g}", r.leb_closure_g, r.sigma_ac);
    ensure!(r.is_ac_in_g == (r.mu_sing_g <= accont::NULL_TOL * (1.0 + m.total_trace())), "is_ac_in_g inconsistent");
    Ok(())
}

fn ac_consistency(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let (ac, _) = m.ac_sing_split();
    let sac = accont::ac_spectrum(&m);
    if !ac.is_empty() {
        let s = ok(MultOp::identity_symbol(ac).spectrum())?;
        ensure!(s == sac, "σ_ac = {sac} but σ(T_x on M_ac) = {s}");
    } else {
        ensure!(sac.is_empty(), "σ_ac = {sac} without segments");
    }
    let sp = ok(MultOp::identity_symbol(m.clone()).point_spectrum())?;
    let atoms = BorelSet::points(&m.atoms().iter().map(|a| a.t).collect::<Vec<_>>());
    ensure!(sp == atoms, "σ_p = {sp} but atoms are {atoms}");
    Ok(())
}

fn minimal_support_canonical(rng: &mut FuzzRng) -> Outcome {
    let m = small_measure(rng);
    let omegas: Vec<BorelSet> = (0..20).map(|_| maybe_null_set(rng, &m)).collect();
    ensure!(accont::minimal_support_check(&m, &m.minimal_support_ac(), &omegas), "canonical support rejected");
    let g = fuzz::random_set(rng, 2, 0);
    ensure!(g.leb_closure().is_subset(&g.closure()), "Fact C.8 (i) fails for {g}");
    Ok(())
}

// --------------------------------------------------------------- examples

fn ex_eig_swap() -> Outcome {
    let eig = ok(linalg::eig_hermitian(&real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]]), 1e-10))?;
    ensure!(eig.eigenvalues.len() == 2, "expected two eigenvalues");
    ensure!((eig.eigenvalues[0] + 1.0).abs() < 1e-14 && (eig.eigenvalues[1] - 1.0).abs() < 1e-14, "eigenvalues {:?}", eig.eigenvalues);
    Ok(())
}

fn ex_sqrt_diag() -> Outcome {
    let s = ok(linalg::sqrt_psd(&real_matrix(&[&[4.0, 0.0], &[0.0, 9.0]])))?;
    ensure!((&s - &real_matrix(&[&[2.0, 0.0], &[0.0, 3.0]])).norm() < 1e-14, "sqrt(diag(4,9)) wrong");
    Ok(())
}

fn ex_measure_values() -> Outcome {
    let m = canonical_mixed_measure(2);
    ensure!(m.trace_measure(&BorelSet::real_line()) == 4.0, "total trace");
    ensure!(m.evaluate(&BorelSet::closed(0.0, 0.5)) == ComplexMatrix::identity(2).scale_real(0.5), "M([0,½])");
    ensure!(m.is_zero_set(&BorelSet::open(1.0, 2.0), 1e-14), "(1,2) should be null");
    Ok(())
}

fn ex_set_parse() -> Outcome {
    let s = ok(BorelSet::parse("[0,1]u(2,3)u{5}"))?;
    ensure!(s.contains(0.0) && !s.contains(2.0) && s.contains(5.0), "membership of {s}");
    ensure!((s.leb_measure() - 2.0).abs() < 1e-15, "length of {s}");
    Ok(())
}

fn ex_zero_layer_witness() -> Outcome {
    let m = split_diagonal_measure();
    let f = zero_layer_witness();
    ensure!(ok(l2::seminorm(&m, &f))? == 0.0, "witness has nonzero seminorm");
    ensure!(ok(l2::is_zero_layer(&m, &f, 1e-14))?, "witness not in the zero layer");
    ensure!(m.evaluate(&BorelSet::closed(-1.0, 1.0)) == ComplexMatrix::identity(2), "M({{f ≠ 0}}) ≠ I");
    Ok(())
}

fn ex_mixed_spectrum() -> Outcome {
    let op = MultOp::identity_symbol(canonical_mixed_measure(2));
    ensure!(ok(op.spectrum())? == ok(BorelSet::parse("[0,1]u{2}"))?, "σ(T_x)");
    ensure!(ok(op.point_spectrum())? == BorelSet::point(2.0), "σ_p(T_x)");
    ensure!(ok(op.op_norm())? == 2.0, "‖T_x‖");
    Ok(())
}

fn ex_xmue_swap() -> Outcome {
    let a = ok(HermitianOperator::new(real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]]), 1e-10))?;
    let phi = ok(VectorSystem::new(2, vec![vec![ONE, ZERO]]))?;
    let r = ok(cyclic::verify_xmue(&a, &phi, 1e-12, &[BorelSet::closed(-2.0, 0.0)]))?;
    ensure!(r.max_residual < 1e-12, "residual {:e}", r.max_residual);
    Ok(())
}

fn ex_not_cyclic() -> Outcome {
    let a = ok(HermitianOperator::new(ComplexMatrix::identity(2), 1e-10))?;
    let phi = ok(VectorSystem::new(2, vec![vec![ONE, ZERO]]))?;
    match cyclic::verify_xmue(&a, &phi, 1e-10, &[]) {
        Err(Error::NotCyclic { rank: 1, dim: 2 }) => Ok(()),
        other => Err(format!("expected NotCyclic, got {other:?}")),
    }
}

fn ex_ac_report() -> Outcome {
    let m = canonical_mixed_measure(2);
    let r = accont::ac_report(&m, &BorelSet::open(0.0, 0.5));
    ensure!(r.mu_sing_g == 0.0 && r.hypotheses_hold && r.inclusion_holds, "report {r:?}");
    ensure!(r.leb_closure_g == BorelSet::closed(0.0, 0.5), "Ḡ^Leb = {}", r.leb_closure_g);
    ensure!(r.sigma_ac == BorelSet::closed(0.0, 1.0), "σ_ac = {}", r.sigma_ac);
    let r = accont::ac_report(&m, &BorelSet::point(2.0));
    ensure!(!r.hypotheses_hold, "hypotheses should fail at the atom");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in Suite::MODULES.iter().chain([&Suite::All]) {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), *s);
        }
        assert!(matches!("unknown".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn one_case_runs_examples_plus_one() {
        let r = run(Suite::Cyclic, 42, 1);
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.properties[0].cases, examples(Suite::Cyclic).len());
        assert!(r.properties[1..].iter().all(|p| p.cases == 1));
    }

    #[test]
    fn runs_are_deterministic() {
        assert_eq!(run(Suite::Measure, 7, 3), run(Suite::Measure, 7, 3));
    }

    #[test]
    fn every_suite_passes_a_short_run() {
        for s in Suite::MODULES {
            let r = run(s, 1, 10);
            assert!(r.passed, "{r:#?}");
        }
    }
}
