#![no_main]

use libfuzzer_sys::fuzz_target;
use shortgf_core::gf::parse_gf;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_gf(text) {
        // accepted input is canonical
        if text.ends_with('\n') {
            assert_eq!(f.to_string(), text);
        }
        assert_eq!(parse_gf(&f.to_string()).unwrap(), f);
    }
});
