#![no_main]

use libfuzzer_sys::fuzz_target;

use expander_lp::ratio::{format_ratio, parse_ratio};

// Parsing must never panic, and the canonical form must round-trip.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_ratio(text) {
        assert_eq!(parse_ratio(&format_ratio(&r)).unwrap(), r);
    }
});
