#![no_main]

use clique_intersect::setsystem::IntersectionSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(spec) = IntersectionSpec::parse(r as usize, text) {
        assert!(spec.values().iter().all(|&l| l < spec.r()));
    }
});
