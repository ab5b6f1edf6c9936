mod common;

use proptest::prelude::*;

use common::{cylinder_case_spectrum, torus_case_spectrum};
use meshcolor::coloring::{spectrum, verify_interval, Color};
use meshcolor::constructions::{cylinder_coloring, step_down, torus_coloring, ConstructionError, Rule};
use meshcolor::graph::GridVertex;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cylinder_matches_closed_form(m in 1u32..=12, n in 2u32..=12) {
        let r = cylinder_coloring(m, n).unwrap();
        prop_assert_eq!(r.claimed_t, 3 * m + n - 2);
        for &v in r.coloring.graph().vertices() {
            prop_assert_eq!(spectrum(&r.coloring, v).unwrap(), cylinder_case_spectrum(m, n, v));
        }
    }

    #[test]
    fn torus_matches_closed_form(m in 2u32..=12, n in 2u32..=12) {
        let r = torus_coloring(m, n).unwrap();
        prop_assert_eq!(r.claimed_t, (3 * m + n).max(3 * n + m));
        for &v in r.coloring.graph().vertices() {
            prop_assert_eq!(spectrum(&r.coloring, v).unwrap(), torus_case_spectrum(m, n, v));
        }
    }

    #[test]
    fn reversal_keeps_interval(m in 1u32..=6, n in 2u32..=6, torus in any::<bool>()) {
        let c = if torus && m >= 2 { torus_coloring(m, n) } else { cylinder_coloring(m, n) }.unwrap().coloring;
        let r = c.reversed().unwrap();
        prop_assert!(verify_interval(&r).interval);
        prop_assert!(r.palette_size() as usize >= r.graph().max_degree());
    }

    #[test]
    fn rule_trace_partitions_edges(m in 2u32..=8, n in 2u32..=8) {
        for r in [cylinder_coloring(m, n).unwrap(), torus_coloring(m, n).unwrap()] {
            let trace = r.rule_trace.as_ref().unwrap();
            prop_assert_eq!(trace.len(), r.coloring.graph().edge_count());
        }
        let t = torus_coloring(m, n).unwrap();
        let rules: std::collections::BTreeSet<u8> = t.rule_trace.unwrap().iter().map(|r| match r {
            Rule::Torus(k) => *k,
            Rule::Cylinder(_) => 0,
        }).collect();
        // rule 2 is empty only when the longer side is 2
        let expect: std::collections::BTreeSet<u8> =
            if m.max(n) == 2 { [1, 3, 4, 5, 6, 7, 8].into() } else { (1..=8).collect() };
        prop_assert_eq!(rules, expect);
    }

    #[test]
    fn step_down_reaches_every_palette(m in 2u32..=6, n in 2u32..=6) {
        let mut c = torus_coloring(m, n).unwrap().coloring;
        let mut seen = vec![c.palette_size()];
        while c.palette_size() > 4 {
            c = step_down(&c).unwrap();
            prop_assert!(verify_interval(&c).interval);
            seen.push(c.palette_size());
        }
        let want: Vec<Color> = (4..=(3 * m + n).max(3 * n + m)).rev().collect();
        prop_assert_eq!(seen, want);
    }
}

#[test]
fn torus_mirror_layers_share_spectra() {
    let r = torus_coloring(3, 5).unwrap();
    for k in 1..=3 {
        for j in 1..=10 {
            let a = spectrum(&r.coloring, GridVertex::new(k, j)).unwrap();
            let b = spectrum(&r.coloring, GridVertex::new(7 - k, j)).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn torus_first_column_spectra() {
    let r = torus_coloring(4, 6).unwrap();
    for k in 1..=4u32 {
        let want: std::collections::BTreeSet<Color> = (k..k + 4).collect();
        assert_eq!(spectrum(&r.coloring, GridVertex::new(k, 1)).unwrap(), want);
    }
}

#[test]
fn cylinder_step_down_needs_regularity() {
    for m in 3..=5 {
        let c = cylinder_coloring(m, 3).unwrap().coloring;
        assert!(matches!(step_down(&c), Err(ConstructionError::NotRegular { min: 3, max: 4 })));
    }
    // C(1, 2n) is a 2-regular cycle: steps down all the way to t = 2
    let mut c = cylinder_coloring(1, 5).unwrap().coloring;
    while c.palette_size() > 2 {
        c = step_down(&c).unwrap();
    }
    assert!(verify_interval(&c).interval);
}
