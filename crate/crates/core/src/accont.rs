//! Absolute-continuity classification of `T_x` on a matrix measure.

use serde::{Deserialize, Serialize};

use crate::borel::BorelSet;
use crate::measure::MatrixMeasure;
use crate::multop::MultOp;

/// Relative threshold below which a trace counts as zero.
pub const NULL_TOL: f64 = 1e-12;

fn null_threshold(m: &MatrixMeasure) -> f64 {
    NULL_TOL * (1.0 + m.total_trace())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcReport {
    /// `tr μ_sing(G)`
    pub mu_sing_g: f64,
    pub is_ac_in_g: bool,
    pub leb_closure_g: BorelSet,
    pub sigma_ac: BorelSet,
    pub sigma_p: BorelSet,
    /// `μ_sing(G) = 0` and `G ⊆ minimal_support_ac(M)`.
    pub hypotheses_hold: bool,
    pub inclusion_holds: bool,
}

/// `tr μ_sing(G)`: the atoms of `M` inside `G`.
pub fn mu_sing(m: &MatrixMeasure, g: &BorelSet) -> f64 {
    m.atoms().iter().filter(|a| g.contains(a.t)).fold(0.0, |s, a| s + a.weight.trace_re())
}

pub fn is_ac_in_g(m: &MatrixMeasure, g: &BorelSet) -> bool {
    mu_sing(m, g) <= null_threshold(m)
}

/// `σ_ac = VE(x)` against the segment part.
pub fn ac_spectrum(m: &MatrixMeasure) -> BorelSet {
    let (ac, _) = m.ac_sing_split();
    MultOp::identity_symbol(ac)
        .essential_values()
        .expect("the identity symbol is real affine")
}

pub fn ac_report(m: &MatrixMeasure, g: &BorelSet) -> AcReport {
    let mu_sing_g = mu_sing(m, g);
    let is_ac = mu_sing_g <= null_threshold(m);
    let leb_closure_g = g.leb_closure();
    let sigma_ac = ac_spectrum(m);
    let sigma_p = MultOp::identity_symbol(m.clone())
        .point_spectrum()
        .expect("the identity symbol is real affine");
    let hypotheses_hold = is_ac && g.is_subset(&m.minimal_support_ac());
    let inclusion_holds = leb_closure_g.is_subset(&sigma_ac);
    AcReport { mu_sing_g, is_ac_in_g: is_ac, leb_closure_g, sigma_ac, sigma_p, hypotheses_hold, inclusion_holds }
}

/// Checks that `s` is a minimal support of `μ_ac` on the test family `omegas`
/// plus the witnesses `ℝ∖s` and `s∖(supp μ_ac ∪ atoms)`.
pub fn minimal_support_check(m: &MatrixMeasure, s: &BorelSet, omegas: &[BorelSet]) -> bool {
    let tol = null_threshold(m);
    let (ac, _) = m.ac_sing_split();
    let atoms = BorelSet::points(&m.atoms().iter().map(|a| a.t).collect::<Vec<_>>());
    let supports = ac.trace_measure(&s.complement()) <= tol;
    let witness = s.set_minus(&m.minimal_support_ac().union(&atoms));
    let predicates = |omega: &BorelSet| {
        let leb = omega.leb_measure();
        let null = m.trace_measure(omega) <= tol;
        let first = !(mu_sing(m, omega) <= tol && leb <= NULL_TOL) || null;
        let second = !(omega.is_subset(s) && null) || leb <= NULL_TOL;
        first && second
    };
    supports && predicates(&witness) && omegas.iter().all(predicates)
}
