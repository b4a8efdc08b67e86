#![no_main]

use libfuzzer_sys::fuzz_target;

use expander_lp::code_core::{parse_alist, write_alist};

// Parsing must never panic, and anything accepted must round-trip
// through the writer to an identical graph.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_alist(text) {
        let again = parse_alist(&write_alist(&g)).expect("writer output must reparse");
        assert_eq!(again, g);
    }
});
