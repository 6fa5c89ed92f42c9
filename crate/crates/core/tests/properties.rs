//! Invariants as proptest properties. The fuzz checks in `verify` take an
//! RNG; here proptest picks the seed so failures shrink to a reproducible one.

use matmeasure::borel::Interval;
use matmeasure::fuzz;
use matmeasure::verify::{self, Suite};
use matmeasure::BorelSet;
use proptest::prelude::*;

fn run_suite(suite: Suite, seed: u64) -> Result<(), TestCaseError> {
    for p in verify::properties(suite) {
        let mut rng = fuzz::rng(seed);
        (p.check)(&mut rng).map_err(|msg| TestCaseError::fail(format!("{suite}/{}: {msg}", p.name)))?;
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linalg_invariants(seed in any::<u64>()) { run_suite(Suite::Linalg, seed)?; }

    #[test]
    fn measure_invariants(seed in any::<u64>()) { run_suite(Suite::Measure, seed)?; }

    #[test]
    fn l2_invariants(seed in any::<u64>()) { run_suite(Suite::L2, seed)?; }

    #[test]
    fn multop_invariants(seed in any::<u64>()) { run_suite(Suite::Multop, seed)?; }

    #[test]
    fn cyclic_invariants(seed in any::<u64>()) { run_suite(Suite::Cyclic, seed)?; }

    #[test]
    fn accont_invariants(seed in any::<u64>()) { run_suite(Suite::Accont, seed)?; }
}

// Endpoints on a coarse grid so unions and differences hit shared boundaries.
fn grid() -> impl Strategy<Value = f64> {
    (-8i32..=8).prop_map(|k| k as f64 / 2.0)
}

fn interval() -> impl Strategy<Value = Interval> {
    (grid(), grid(), any::<bool>(), any::<bool>())
        .prop_map(|(a, b, lc, hc)| Interval::new(a.min(b), a.max(b), lc, hc))
}

fn borel_set() -> impl Strategy<Value = BorelSet> {
    (prop::collection::vec(interval(), 0..4), prop::collection::vec(grid(), 0..3))
        .prop_map(|(ivs, pts)| BorelSet::from_parts(ivs, pts))
}

fn probes() -> Vec<f64> {
    (-40..=40).map(|k| k as f64 / 8.0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn set_operations_match_membership(a in borel_set(), b in borel_set()) {
        let (u, i, d) = (a.union(&b), a.intersect(&b), a.set_minus(&b));
        for t in probes() {
            prop_assert_eq!(u.contains(t), a.contains(t) || b.contains(t));
            prop_assert_eq!(i.contains(t), a.contains(t) && b.contains(t));
            prop_assert_eq!(d.contains(t), a.contains(t) && !b.contains(t));
            prop_assert_eq!(a.complement().contains(t), !a.contains(t));
        }
    }

    #[test]
    fn canonical_form_is_unique(a in borel_set(), b in borel_set()) {
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.set_minus(&b).union(&a.intersect(&b)), a);
    }

    #[test]
    fn display_parse_round_trip(a in borel_set()) {
        prop_assert_eq!(BorelSet::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn leb_closure_drops_null_parts(a in borel_set()) {
        let lc = a.leb_closure();
        prop_assert!(lc.isolated_points().is_empty());
        prop_assert!(lc.is_subset(&a.closure()));
        prop_assert!((lc.leb_measure() - a.leb_measure()).abs() < 1e-12);
    }
}
