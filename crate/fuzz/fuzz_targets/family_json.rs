#![no_main]

use hypcongest::io::{family_from_named, parse_edge_list, parse_family_json};
use hypcongest::DistanceMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sets) = parse_family_json(text) {
        // a 6-cycle on 0..5 with pendant vertices a and b
        let (g, labels) = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 5\n5 0\na 0\nb 1\n").unwrap();
        let dm = DistanceMatrix::new(&g).unwrap();
        let _ = family_from_named(&sets, &labels, &dm);
    }
});
