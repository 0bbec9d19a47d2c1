//! Replays the checked-in fuzz corpus through the parsers on stable.

use std::fs;
use std::path::PathBuf;

use hypersum::literal::{parse_complex, parse_complex_list, parse_grid_axis, parse_real_list};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| String::from_utf8(fs::read(e.unwrap().path()).unwrap()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn literal_seeds() {
    let parsed: Vec<bool> = seeds("complex_literal")
        .iter()
        .map(|s| parse_complex(s).is_ok())
        .collect();
    assert!(parsed.iter().all(|&ok| ok));
}

#[test]
fn list_seeds() {
    for s in seeds("complex_list") {
        let _ = parse_complex_list(&s);
        let _ = parse_real_list(&s);
    }
    assert!(parse_complex_list("1,,2").is_err());
}

#[test]
fn grid_seeds() {
    let ok: Vec<bool> = seeds("grid_axis")
        .iter()
        .map(|s| parse_grid_axis(s).is_ok())
        .collect();
    assert_eq!(ok.iter().filter(|&&b| !b).count(), 1);
}

#[test]
fn params_seeds() {
    for s in seeds("params_from_literals") {
        let parts: Vec<&str> = s.splitn(3, ';').collect();
        let a = parse_complex_list(parts[0]).unwrap();
        let b = parse_complex_list(parts[1]).unwrap();
        let n: usize = parts[2].parse().unwrap();
        if let Ok(params) = hypersum::HypParams::new(a, b) {
            let g = hypersum::hyp::gn_direct(&params, n % 40).unwrap();
            assert_eq!(g.coeff(0), hypersum::Complex64::new(1.0, 0.0));
        }
    }
}
