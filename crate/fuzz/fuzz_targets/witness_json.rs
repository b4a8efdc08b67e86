#![no_main]

use libfuzzer_sys::fuzz_target;

use expander_lp::code_core::{build_graph, TannerGraph};
use expander_lp::witness::{verify_feasible, WitnessJson};

// Same fixed instance as the decode_request target.
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

// Adversarial witness documents: validation and the black-box
// feasibility verdict must both run without panicking.
fuzz_target!(|data: &[u8]| {
    let Ok(doc) = serde_json::from_slice::<WitnessJson>(data) else {
        return;
    };
    let g = graph();
    if let Ok((assignment, ctx)) = doc.to_parts(&g) {
        verify_feasible(&g, &assignment, &ctx).expect("validated parts must be judgeable");
    }
});
