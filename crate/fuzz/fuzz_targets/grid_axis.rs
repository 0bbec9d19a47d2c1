#![no_main]

use hypersum::literal::{parse_grid_axis, AxisTarget};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(axis) = parse_grid_axis(s) {
        match axis.target {
            AxisTarget::Upper(j) | AxisTarget::Lower(j) => assert!(j >= 1),
            AxisTarget::Degree => {}
        }
    }
});
