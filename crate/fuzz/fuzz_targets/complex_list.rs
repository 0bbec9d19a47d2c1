#![no_main]

use hypersum::literal::{parse_complex_list, parse_real_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_complex_list(s) {
        assert!(v.len() <= s.len() + 1);
    }
    if let Ok(v) = parse_real_list(s) {
        assert!(v.iter().all(|x| x.is_finite()));
    }
});
