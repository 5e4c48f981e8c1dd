#![no_main]

use libfuzzer_sys::fuzz_target;
use wmin_core::rational::{fmt_q, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_rational(s) {
        // Canonical text re-parses to the same value and is a fixed point.
        let t = fmt_q(&x);
        assert_eq!(parse_rational(&t).unwrap(), x);
        assert_eq!(fmt_q(&parse_rational(&t).unwrap()), t);
    }
});
