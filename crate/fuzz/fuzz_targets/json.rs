#![no_main]

use libfuzzer_sys::fuzz_target;
use wmin_core::unitarity::UnitarityVerdict;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(recs) = wmin_cli::parse_series(s) {
        let again = serde_json::to_string_pretty(&recs).unwrap();
        assert_eq!(wmin_cli::parse_series(&again).unwrap(), recs);
    }
    if let Ok(v) = serde_json::from_str::<UnitarityVerdict>(s) {
        let again = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<UnitarityVerdict>(&again).unwrap(), v);
    }
});
