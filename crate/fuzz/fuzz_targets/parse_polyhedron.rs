#![no_main]

use libfuzzer_sys::fuzz_target;
use shortgf_core::barvinok::parse_polyhedron;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polyhedron(text) {
        assert_eq!(parse_polyhedron(&p.to_string()).unwrap(), p);
    }
});
