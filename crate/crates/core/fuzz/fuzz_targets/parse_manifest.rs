#![no_main]

use libfuzzer_sys::fuzz_target;
use meshcolor::cli::RunManifest;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = RunManifest::parse(text) {
        let again = RunManifest::parse(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(again, m);
    }
});
