#![no_main]

use hypcongest::io::{parse_edge_list, write_edge_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((g, labels)) = parse_edge_list(text) {
        assert_eq!(labels.len(), g.n());
        let again = parse_edge_list(&write_edge_list(&g, &labels)).unwrap().0;
        assert_eq!(again.edge_count(), g.edge_count());
    }
});
