#![no_main]

use libfuzzer_sys::fuzz_target;
use meshcolor::coloring::verify_interval;
use meshcolor::format::{coloring_to_json, parse_coloring};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((c, rules)) = parse_coloring(text) {
        let report = verify_interval(&c);
        if report.interval {
            assert!(report.first_violation().is_none());
        }
        let (back, _) = parse_coloring(&coloring_to_json(&c, rules.as_deref())).expect("serialized coloring parses");
        assert_eq!(back.colors(), c.colors());
    }
});
