use proptest::prelude::*;

use meshcolor::cli::{parse_range, RunManifest};
use meshcolor::constructions::{cylinder_coloring, torus_coloring};
use meshcolor::format::{coloring_to_json, graph_to_json, parse_coloring, parse_graph};
use meshcolor::graph::{build_family, Family};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parsers_never_panic(s in "\\PC*") {
        let _ = parse_graph(&s);
        let _ = parse_coloring(&s);
        let _ = parse_range(&s);
        let _ = RunManifest::parse(&s);
    }

    #[test]
    fn json_shaped_noise(s in r#"\{"family":"(cylinder|torus|cycle|path)","m":[0-9]{1,3},"n":[0-9]{1,3},"t":[0-9]{1,3},"vertices":\[(\[[0-9],[0-9]\],?){0,4}\],"edges":\[\]\}"#) {
        let _ = parse_coloring(&s);
        let _ = parse_graph(&s);
    }

    #[test]
    fn range_round_trip(a in 0u32..1000, len in 0u32..1000) {
        let b = a + len;
        prop_assert_eq!(parse_range(&format!("{a}..{b}")), Ok(a..=b));
        prop_assert_eq!(parse_range(&format!("{a}..={b}")), Ok(a..=b));
    }

    #[test]
    fn coloring_json_round_trip(m in 1u32..=5, n in 2u32..=5, torus in any::<bool>()) {
        let r = if torus && m >= 2 { torus_coloring(m, n) } else { cylinder_coloring(m, n) }.unwrap();
        let text = coloring_to_json(&r.coloring, r.rule_trace.as_deref());
        let (back, rules) = parse_coloring(&text).unwrap();
        prop_assert_eq!(back.colors(), r.coloring.colors());
        prop_assert_eq!(back.palette_size(), r.claimed_t);
        prop_assert_eq!(rules, r.rule_trace);
        prop_assert_eq!(coloring_to_json(&back, None), coloring_to_json(&r.coloring, None));
    }

    #[test]
    fn graph_json_round_trip(m in 1u32..=5, n in 2u32..=5, family in prop::sample::select(vec!["cylinder", "torus"])) {
        let m = if family == "torus" { m.max(2) } else { m };
        let g = build_family(Family::from_parts(family, Some(m), Some(n)).unwrap()).unwrap();
        let back = parse_graph(&graph_to_json(&g)).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.vertices(), g.vertices());
    }
}

#[test]
fn truncated_documents_fail_cleanly() {
    let text = coloring_to_json(&torus_coloring(2, 2).unwrap().coloring, None);
    for cut in (0..text.len()).step_by(7) {
        assert!(parse_coloring(&text[..cut]).is_err());
    }
}
