use hypersum::verify::{check_applicable, run_check, run_randomized, CheckKind};
use hypersum::{Error, HypParams};

#[test]
fn bessel_type_parameters_pass_every_check() {
    let params = HypParams::from_real(&[], &[1.5]).unwrap();
    for kind in CheckKind::ALL {
        let out = run_check(kind, &params, 12, 3).unwrap();
        // p <= q: the Gram diagonal is beyond double precision here.
        let gated = out
            .measurements
            .iter()
            .filter(|m| m.name != "gram_diag_rel_error");
        for m in gated {
            assert!(m.passed(), "{kind:?}: {m:?}");
        }
    }
}

#[test]
fn kummer_parameters_pass_localization() {
    let params = HypParams::from_real(&[0.5], &[2.0]).unwrap();
    let out = run_check(CheckKind::Roots, &params, 25, 0).unwrap();
    assert!(out.passed(), "{:?}", out.measurements);
}

#[test]
fn complex_parameters_skip_localization() {
    let params = HypParams::new(
        vec![hypersum::Complex64::new(1.0, 1.0)],
        vec![hypersum::Complex64::new(2.0, 0.0)],
    )
    .unwrap();
    assert!(matches!(
        check_applicable(CheckKind::Roots, &params),
        Err(Error::Precondition(_))
    ));
    assert!(check_applicable(CheckKind::CircleRep, &params).is_ok());
}

#[test]
fn randomized_runs_are_reproducible() {
    for kind in [CheckKind::Recurrence, CheckKind::RiFrac, CheckKind::Pencil] {
        let a = run_randomized(kind, 10, 42).unwrap();
        let b = run_randomized(kind, 10, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
    }
}

#[test]
fn boundary_case_is_reported_not_counted() {
    let out = run_check(CheckKind::Roots, &HypParams::exponential(), 5, 0).unwrap();
    assert!(out.passed());
    assert!(out.notes.iter().any(|n| n.contains("boundary")));
}
