#![no_main]

use libfuzzer_sys::fuzz_target;
use shortgf_numlab::{find_ap, parse_ap_set};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = parse_ap_set(text) {
        if set.len() <= 256 {
            if let Some(w) = find_ap(&set, 3).unwrap() {
                assert!(w.difference > 0);
                assert!(w.terms().all(|x| set.contains(&x)));
            }
        }
    }
});
