#![no_main]

use hypcongest::io::{parse_pairs, resolve_pairs, Labels};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pairs) = parse_pairs(text) {
        assert!(pairs.iter().all(|(_, a, b)| a != b));
        let _ = resolve_pairs(&pairs, &Labels::identity(16));
    }
});
