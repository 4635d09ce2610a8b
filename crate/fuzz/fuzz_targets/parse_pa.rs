#![no_main]

use libfuzzer_sys::fuzz_target;
use shortgf_core::presburger::parse_pa;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_pa(text) {
        let printed = f.to_string();
        let again = parse_pa(&printed).expect("printed formula parses");
        assert_eq!(again.to_string(), printed);
    }
});
