#![no_main]

use libfuzzer_sys::fuzz_target;
use trifact::Bounds;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // small bounds keep every input cheap to certify
    let bounds = Bounds {
        dense_table: 256,
        automorphism: 24,
        isomorphism: 32,
        ..Bounds::default()
    };
    let _ = trifact::io::parse_catalog(text, &bounds);
});
