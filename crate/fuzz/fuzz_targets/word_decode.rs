#![no_main]

use libfuzzer_sys::fuzz_target;

use expander_lp::code_core::{build_graph_nonuniform, is_codeword, BitWord};
use expander_lp::decoders::{flip_decode, lp_decode, DecodeStatus};

// Bytes drive a small instance and a received word: n, m, then edge
// nibbles until 0xff, then word bits. Both decoders must stay
// panic-free and only ever claim actual codewords.
fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let n = (data[0] as usize % 8) + 1;
    let m = (data[1] as usize % 6) + 1;
    let rest = &data[2..];
    let split = rest.iter().position(|&b| b == 0xff).unwrap_or(rest.len());
    let edges: Vec<(usize, usize)> = rest[..split]
        .iter()
        .map(|&b| ((b >> 4) as usize % n, (b & 0x0f) as usize % m))
        .collect();
    let Ok(g) = build_graph_nonuniform(n, m, &edges) else {
        return;
    };
    let mut y = BitWord::zero(n);
    for (i, &b) in rest[split..].iter().skip(1).take(n).enumerate() {
        y.set(i, b & 1 == 1);
    }
    if let Ok(out) = lp_decode(&g, &y) {
        match out.status {
            DecodeStatus::Decoded => {
                assert!(is_codeword(&g, out.word.as_ref().unwrap()).unwrap());
            }
            _ => assert!(out.word.is_none()),
        }
    }
    let flip = flip_decode(&g, &y, 10 * n).unwrap();
    if flip.status == DecodeStatus::Decoded {
        assert!(is_codeword(&g, flip.word.as_ref().unwrap()).unwrap());
    }
});
