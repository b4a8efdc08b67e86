#![no_main]

use libfuzzer_sys::fuzz_target;

use expander_lp::harness::ExperimentConfig;

// Accepted configs must reserialize to a stable canonical form. The
// sweep itself is not run here: configs name files and instance sizes.
fuzz_target!(|data: &[u8]| {
    let Ok(config) = serde_json::from_slice::<ExperimentConfig>(data) else {
        return;
    };
    let text = serde_json::to_string(&config).unwrap();
    let again: ExperimentConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&again).unwrap(), text);
});
