#![no_main]

use hypcongest::io::{kappa_family_from_named, parse_edge_list, parse_kappa_family_json};
use hypcongest::DistanceMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sets) = parse_kappa_family_json(text) {
        let (g, labels) = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 5\n5 0\na 0\nb 1\n").unwrap();
        let dm = DistanceMatrix::new(&g).unwrap();
        if let Ok(family) = kappa_family_from_named(&sets, &labels, &dm) {
            assert!(family.kappa >= 1);
        }
    }
});
