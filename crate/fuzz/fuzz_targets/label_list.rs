#![no_main]

use hypcongest::io::{parse_label_list, Labels};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(ids) = parse_label_list(text, &Labels::identity(32)) {
        assert!(ids.iter().all(|&v| v < 32));
    }
});
