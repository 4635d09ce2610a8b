#![no_main]

use libfuzzer_sys::fuzz_target;
use shortgf_encoder::parse_circuit;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_circuit(text) {
        assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
        if c.r + c.s <= 8 {
            let _ = c.accepted();
        }
    }
});
