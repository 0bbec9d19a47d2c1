#![no_main]

// Input: `A;B;N` with A and B complex lists, as the command line takes them.

use hypersum::hyp::{gn_direct, gn_monic};
use hypersum::literal::parse_complex_list;
use hypersum::HypParams;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let mut parts = s.splitn(3, ';');
    let (Some(a), Some(b), Some(n)) = (parts.next(), parts.next(), parts.next()) else {
        return;
    };
    let (Ok(a), Ok(b), Ok(n)) = (
        parse_complex_list(a),
        parse_complex_list(b),
        n.parse::<usize>(),
    ) else {
        return;
    };
    let Ok(params) = HypParams::new(a, b) else {
        return;
    };
    let n = n % 40;
    if let Ok(g) = gn_direct(&params, n) {
        assert_eq!(g.coeff(0), hypersum::Complex64::new(1.0, 0.0));
    }
    let _ = gn_monic(&params, n);
});
