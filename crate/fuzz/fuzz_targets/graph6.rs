#![no_main]

use clique_intersect::graph6::{parse_graph6_bytes, write_graph6};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_graph6_bytes(data) {
        let line = write_graph6(&g).expect("parsed graphs re-encode");
        assert_eq!(parse_graph6_bytes(line.as_bytes()).expect("round trip"), g);
    }
});
