#![no_main]

use clique_intersect::setsystem::UniformSetSystem;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = UniformSetSystem::parse(text, None) {
        let again = UniformSetSystem::parse(&h.to_text(), Some(h.n())).expect("round trip");
        assert_eq!(again.edges(), h.edges());
    }
});
