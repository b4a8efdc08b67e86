#![no_main]

use libfuzzer_sys::fuzz_target;

use expander_lp::code_core::{build_graph, is_codeword, TannerGraph};
use expander_lp::decoders::{run_request, DecodeRequest, DecodeResponse, DecodeStatus};

// Fixed 6-variable, 4-check instance; small enough that any request
// finishes in microseconds.
fn graph() -> TannerGraph {
    build_graph(
        6,
        4,
        &[
            (0, 0),
            (0, 1),
            (1, 1),
            (1, 2),
            (2, 2),
            (2, 3),
            (3, 3),
            (3, 0),
            (4, 0),
            (4, 2),
            (5, 1),
            (5, 3),
        ],
    )
    .unwrap()
}

// Requests must decode without panicking; a Decoded result must carry
// a codeword and every result must serialize back out.
fuzz_target!(|data: &[u8]| {
    let Ok(req) = serde_json::from_slice::<DecodeRequest>(data) else {
        return;
    };
    let g = graph();
    if let Ok(result) = run_request(&g, &req) {
        match result.status {
            DecodeStatus::Decoded => {
                let word = result.word.as_ref().expect("decoded result carries a word");
                assert!(is_codeword(&g, word).unwrap());
            }
            _ => assert!(result.word.is_none()),
        }
        serde_json::to_string(&DecodeResponse::from(&result)).unwrap();
    }
});
