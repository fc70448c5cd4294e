#![no_main]

use clique_intersect::catalog::{read_catalog, CatalogOptions};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    for skip_bad in [false, true] {
        let options = CatalogOptions {
            skip_bad,
            allow_mixed: true,
        };
        if let Ok(c) = read_catalog(data, options) {
            assert!(c.entries.windows(2).all(|w| w[0].line < w[1].line));
        }
    }
});
