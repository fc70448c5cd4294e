#![no_main]

use clique_intersect::rational::{parse_rational, to_pq};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_rational(text) {
        assert_eq!(parse_rational(&to_pq(&x)).expect("round trip"), x);
    }
});
