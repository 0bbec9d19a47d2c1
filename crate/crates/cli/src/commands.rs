use std::collections::BTreeMap;

use hypersum::diffop::{build_r, kappa};
use hypersum::hyp::{delta_k, gn_direct, gn_monic};
use hypersum::pencil::{pencil_polynomials, pencil_residual, pencil_residual_scale};
use hypersum::pfq::{pfq_eval, DomainClass, DEFAULT_SERIES_TOL};
use hypersum::roots::{
    enestrom_kakeya_bounds, find_roots, reconstruction_error, zero_localization_conditions,
    RootReport, DEFAULT_ROOT_TOL,
};
use hypersum::verify::{
    check_applicable, run_check, run_randomized, Bound, CheckKind, CheckOutcome, MEASUREMENT_NAMES,
};
use hypersum::{sample, Complex64, JacobiPencil, Poly};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::output::{self, complex, complex_list, document, float_field, num};
use crate::{CheckArg, CliError, Format, OutputArgs, ParamArgs, EXIT_VERIFY_FAIL};

fn finish_json(
    command: &str,
    params: Option<&hypersum::HypParams>,
    results: Map<String, Value>,
    diagnostics: Map<String, Value>,
    out: &OutputArgs,
) -> Result<(), CliError> {
    output::emit(
        &output::json_text(&document(command, params, results, diagnostics)),
        out.out.as_deref(),
    )
}

fn finish_csv(header: &[&str], rows: &[Vec<String>], out: &OutputArgs) -> Result<(), CliError> {
    output::emit(&output::csv_text(header, rows)?, out.out.as_deref())
}

const POLY_HEADER: [&str; 5] = ["object", "index", "power", "re", "im"];

fn poly_rows(object: &str, index: usize, p: &Poly, rows: &mut Vec<Vec<String>>) {
    for (k, c) in p.coeffs().iter().enumerate() {
        rows.push(vec![
            object.into(),
            index.to_string(),
            k.to_string(),
            float_field(c.re),
            float_field(c.im),
        ]);
    }
}

fn scalar_row(object: &str, index: usize, z: Option<Complex64>) -> Vec<String> {
    let (re, im) = z.map_or((String::new(), String::new()), |z| {
        (float_field(z.re), float_field(z.im))
    });
    vec![object.into(), index.to_string(), String::new(), re, im]
}

pub fn gen(args: &ParamArgs, n: usize, monic: bool, out: &OutputArgs) -> Result<u8, CliError> {
    let params = args.resolve()?;
    let g = if monic {
        gn_monic(&params, n)?
    } else {
        gn_direct(&params, n)?
    };
    let mut notes = Vec::new();
    let deltas: Vec<Option<Complex64>> = (0..=n)
        .map(|k| {
            delta_k(&params, k)
                .map_err(|e| notes.push(e.to_string()))
                .ok()
        })
        .collect();
    let kappa_n = kappa(&params, n)
        .map_err(|e| notes.push(e.to_string()))
        .ok();
    let r = build_r(&params);
    let name = if monic { "G" } else { "g" };
    match out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut results = Map::new();
            results.insert("n".into(), n.into());
            results.insert(name.into(), output::poly(&g));
            results.insert(
                "delta".into(),
                Value::Array(
                    deltas
                        .iter()
                        .map(|d| d.map_or(Value::Null, complex))
                        .collect(),
                ),
            );
            results.insert("kappa".into(), kappa_n.map_or(Value::Null, complex));
            results.insert(
                "R_coeffs".into(),
                Value::Array(r.coeffs().iter().map(output::poly).collect()),
            );
            let mut diagnostics = Map::new();
            diagnostics.insert("rho".into(), params.rho().into());
            diagnostics.insert(
                "domain_class".into(),
                DomainClass::of(&params).as_str().into(),
            );
            diagnostics.insert("notes".into(), notes.into());
            finish_json("gen", Some(&params), results, diagnostics, out)?;
        }
        Format::Csv => {
            let mut rows = Vec::new();
            poly_rows(name, n, &g, &mut rows);
            for (k, d) in deltas.iter().enumerate() {
                rows.push(scalar_row("delta", k, *d));
            }
            rows.push(scalar_row("kappa", n, kappa_n));
            for (l, c) in r.coeffs().iter().enumerate() {
                poly_rows("R_coeffs", l, c, &mut rows);
            }
            finish_csv(&POLY_HEADER, &rows, out)?;
        }
    }
    Ok(0)
}

/// `(z, g_n(z), pFq(z) and its term count)`.
type EvalPoint = (Complex64, Complex64, Option<(Complex64, usize)>);

pub fn eval(
    args: &ParamArgs,
    n: usize,
    zs: &[Complex64],
    out: &OutputArgs,
) -> Result<u8, CliError> {
    let params = args.resolve()?;
    let g = gn_direct(&params, n)?;
    let mut notes = Vec::new();
    let points: Vec<EvalPoint> = zs
        .iter()
        .map(|&z| {
            let f = pfq_eval(&params, z, DEFAULT_SERIES_TOL)
                .map(|v| (v.value, v.terms_used))
                .map_err(|e| notes.push(format!("pFq at {}: {e}", output::complex_literal(z))))
                .ok();
            (z, g.eval(z), f)
        })
        .collect();
    match out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let list = points
                .iter()
                .map(|(z, gz, f)| {
                    let mut m = Map::new();
                    m.insert("z".into(), complex(*z));
                    m.insert("g".into(), complex(*gz));
                    m.insert("pfq".into(), f.map_or(Value::Null, |(v, _)| complex(v)));
                    m.insert(
                        "terms_used".into(),
                        f.map_or(Value::Null, |(_, t)| t.into()),
                    );
                    Value::Object(m)
                })
                .collect();
            let mut results = Map::new();
            results.insert("n".into(), n.into());
            results.insert("points".into(), Value::Array(list));
            let mut diagnostics = Map::new();
            diagnostics.insert(
                "domain_class".into(),
                DomainClass::of(&params).as_str().into(),
            );
            diagnostics.insert("notes".into(), notes.into());
            finish_json("eval", Some(&params), results, diagnostics, out)?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|(z, gz, f)| {
                    let (fr, fi, t) = f
                        .map_or((String::new(), String::new(), String::new()), |(v, t)| {
                            (float_field(v.re), float_field(v.im), t.to_string())
                        });
                    vec![
                        float_field(z.re),
                        float_field(z.im),
                        float_field(gz.re),
                        float_field(gz.im),
                        fr,
                        fi,
                        t,
                    ]
                })
                .collect();
            finish_csv(
                &[
                    "z_re",
                    "z_im",
                    "g_re",
                    "g_im",
                    "pfq_re",
                    "pfq_im",
                    "terms_used",
                ],
                &rows,
                out,
            )?;
        }
    }
    Ok(0)
}

pub fn roots(args: &ParamArgs, n: usize, out: &OutputArgs) -> Result<u8, CliError> {
    let params = args.resolve()?;
    let g = gn_direct(&params, n)?;
    let roots = if g.degree().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        find_roots(&g, DEFAULT_ROOT_TOL)?
    };
    let recon = reconstruction_error(&g, &roots);
    let report = RootReport::from_roots(roots, enestrom_kakeya_bounds(&g).ok());
    match out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut results = Map::new();
            results.insert("n".into(), n.into());
            results.insert("roots".into(), complex_list(&report.roots));
            results.insert("min_modulus".into(), num(report.min_modulus));
            results.insert("min_pair_distance".into(), num(report.min_pair_distance));
            results.insert("simple".into(), report.simple.into());
            results.insert(
                "positive_real_root_found".into(),
                report.positive_real_root_found.into(),
            );
            results.insert(
                "boundary_roots".into(),
                complex_list(&report.boundary_roots),
            );
            results.insert(
                "ek_annulus".into(),
                report
                    .ek_annulus
                    .map_or(Value::Null, |(lo, hi)| Value::Array(vec![num(lo), num(hi)])),
            );
            results.insert("reconstruction_error".into(), num(recon));
            let mut diagnostics = Map::new();
            let conditions = match zero_localization_conditions(&params) {
                Ok(()) => Value::from("satisfied"),
                Err(e) => Value::from(e.to_string()),
            };
            diagnostics.insert("localization_conditions".into(), conditions);
            diagnostics.insert(
                "outside_open_disk".into(),
                report.outside_open_disk().into(),
            );
            finish_json("roots", Some(&params), results, diagnostics, out)?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .roots
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    vec![
                        i.to_string(),
                        float_field(r.re),
                        float_field(r.im),
                        float_field(r.norm()),
                    ]
                })
                .collect();
            finish_csv(&["index", "re", "im", "modulus"], &rows, out)?;
        }
    }
    Ok(0)
}

pub struct VerifyConfig {
    pub checks: Vec<CheckArg>,
    pub n_max: usize,
    pub seed: u64,
    pub draws: usize,
    pub random: bool,
    pub tol: Vec<String>,
}

fn check_kind(arg: CheckArg) -> Option<CheckKind> {
    Some(match arg {
        CheckArg::Recurrence => CheckKind::Recurrence,
        CheckArg::Ode => CheckKind::Ode,
        CheckArg::Sobolev => CheckKind::Sobolev,
        CheckArg::CircleRep => CheckKind::CircleRep,
        CheckArg::AxisRep => CheckKind::AxisRep,
        CheckArg::Roots => CheckKind::Roots,
        CheckArg::Rifrac => CheckKind::RiFrac,
        CheckArg::Pencil => CheckKind::Pencil,
        CheckArg::All => return None,
    })
}

fn parse_overrides(specs: &[String]) -> Result<BTreeMap<&'static str, f64>, CliError> {
    let mut map = BTreeMap::new();
    for s in specs {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--tol `{s}`: expected NAME=VALUE")))?;
        let name = MEASUREMENT_NAMES
            .into_iter()
            .find(|m| *m == name)
            .ok_or_else(|| CliError::usage(format!("--tol `{s}`: unknown measurement `{name}`")))?;
        let value: f64 = value
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| {
                CliError::usage(format!("--tol `{s}`: `{value}` is not a finite number"))
            })?;
        map.insert(name, value);
    }
    Ok(map)
}

enum Status {
    Ran(CheckOutcome),
    Skipped(CheckKind, String),
}

pub fn verify(args: &ParamArgs, cfg: &VerifyConfig, out: &OutputArgs) -> Result<u8, CliError> {
    let overrides = parse_overrides(&cfg.tol)?;
    if cfg.random && args.given() {
        return Err(CliError::usage(
            "--random draws its own parameters; drop --p/--q/--a/--b",
        ));
    }
    let params = args.resolve()?;
    let explicit: Vec<CheckKind> = cfg.checks.iter().filter_map(|&c| check_kind(c)).collect();
    let selected: Vec<CheckKind> = if cfg.checks.contains(&CheckArg::All) {
        CheckKind::ALL.to_vec()
    } else {
        CheckKind::ALL
            .into_iter()
            .filter(|k| explicit.contains(k))
            .collect()
    };
    let mut statuses = Vec::new();
    for kind in selected {
        let ran = if cfg.random {
            run_randomized(kind, cfg.draws, cfg.seed)
        } else {
            check_applicable(kind, &params)
                .and_then(|()| run_check(kind, &params, cfg.n_max, cfg.seed))
        };
        match ran {
            Ok(mut outcome) => {
                for m in &mut outcome.measurements {
                    if let Some(&t) = overrides.get(m.name) {
                        m.threshold = t;
                    }
                }
                statuses.push(Status::Ran(outcome));
            }
            Err(e @ hypersum::Error::NoConvergence { .. }) => {
                let mut outcome = CheckOutcome {
                    check: kind,
                    measurements: Vec::new(),
                    notes: vec![e.to_string()],
                };
                outcome
                    .measurements
                    .push(hypersum::verify::Measurement::at_most(
                        "converged",
                        1.0,
                        0.0,
                    ));
                statuses.push(Status::Ran(outcome));
            }
            Err(e) if explicit.contains(&kind) => {
                return Err(CliError::domain(format!("check {}: {e}", kind.name())));
            }
            Err(e) => statuses.push(Status::Skipped(kind, e.to_string())),
        }
    }
    let failed = statuses
        .iter()
        .filter(|s| matches!(s, Status::Ran(o) if !o.passed()))
        .count();
    let skipped = statuses
        .iter()
        .filter(|s| matches!(s, Status::Skipped(..)))
        .count();
    for s in &statuses {
        match s {
            Status::Ran(o) => eprintln!(
                "{} {}",
                if o.passed() { "PASS" } else { "FAIL" },
                o.check.name()
            ),
            Status::Skipped(k, _) => eprintln!("SKIPPED {}", k.name()),
        }
    }
    match out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let checks = statuses
                .iter()
                .map(|s| {
                    let mut m = Map::new();
                    match s {
                        Status::Ran(o) => {
                            m.insert("check".into(), o.check.name().into());
                            m.insert(
                                "status".into(),
                                if o.passed() { "PASS" } else { "FAIL" }.into(),
                            );
                            let ms = o
                                .measurements
                                .iter()
                                .map(|x| {
                                    let mut e = Map::new();
                                    e.insert("name".into(), x.name.into());
                                    e.insert("value".into(), num(x.value));
                                    e.insert("threshold".into(), num(x.threshold));
                                    e.insert("bound".into(), bound_name(x.bound).into());
                                    e.insert("passed".into(), x.passed().into());
                                    Value::Object(e)
                                })
                                .collect();
                            m.insert("measurements".into(), Value::Array(ms));
                            m.insert("notes".into(), o.notes.clone().into());
                        }
                        Status::Skipped(k, reason) => {
                            m.insert("check".into(), k.name().into());
                            m.insert("status".into(), "SKIPPED".into());
                            m.insert("measurements".into(), Value::Array(Vec::new()));
                            m.insert("notes".into(), vec![reason.clone()].into());
                        }
                    }
                    Value::Object(m)
                })
                .collect();
            let mut results = Map::new();
            results.insert(
                "mode".into(),
                if cfg.random { "random" } else { "fixed" }.into(),
            );
            results.insert("seed".into(), cfg.seed.into());
            if cfg.random {
                results.insert("draws".into(), cfg.draws.into());
            } else {
                results.insert("n_max".into(), cfg.n_max.into());
            }
            results.insert("checks".into(), Value::Array(checks));
            let mut diagnostics = Map::new();
            diagnostics.insert(
                "overall".into(),
                if failed == 0 { "PASS" } else { "FAIL" }.into(),
            );
            diagnostics.insert("failed".into(), failed.into());
            diagnostics.insert("skipped".into(), skipped.into());
            let p = (!cfg.random).then_some(&params);
            finish_json("verify", p, results, diagnostics, out)?;
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for s in &statuses {
                match s {
                    Status::Ran(o) => {
                        let status = if o.passed() { "PASS" } else { "FAIL" };
                        for x in &o.measurements {
                            rows.push(vec![
                                o.check.name().into(),
                                status.into(),
                                x.name.into(),
                                float_field(x.value),
                                float_field(x.threshold),
                                bound_name(x.bound).into(),
                                x.passed().to_string(),
                            ]);
                        }
                    }
                    Status::Skipped(k, _) => {
                        rows.push(vec![
                            k.name().into(),
                            "SKIPPED".into(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                        ]);
                    }
                }
            }
            finish_csv(
                &[
                    "check",
                    "status",
                    "measurement",
                    "value",
                    "threshold",
                    "bound",
                    "passed",
                ],
                &rows,
                out,
            )?;
        }
    }
    Ok(if failed == 0 { 0 } else { EXIT_VERIFY_FAIL })
}

fn bound_name(b: Bound) -> &'static str {
    match b {
        Bound::AtMost => "at_most",
        Bound::AtLeast => "at_least",
    }
}

pub struct PencilEntries {
    pub j3_diag: Option<Vec<f64>>,
    pub j3_off: Option<Vec<f64>>,
    pub j5_diag: Option<Vec<f64>>,
    pub j5_off1: Option<Vec<f64>>,
    pub j5_off2: Option<Vec<f64>>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
}

impl PencilEntries {
    fn any(&self) -> bool {
        self.j3_diag.is_some()
            || self.j3_off.is_some()
            || self.j5_diag.is_some()
            || self.j5_off1.is_some()
            || self.j5_off2.is_some()
            || self.alpha.is_some()
            || self.beta.is_some()
    }

    fn build(self) -> Result<JacobiPencil, CliError> {
        fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
            v.ok_or_else(|| CliError::usage(format!("{flag} is required unless --random is given")))
        }
        Ok(JacobiPencil::new(
            need(self.j3_diag, "--j3-diag")?,
            need(self.j3_off, "--j3-off")?,
            need(self.j5_diag, "--j5-diag")?,
            need(self.j5_off1, "--j5-off1")?,
            need(self.j5_off2, "--j5-off2")?,
            need(self.alpha, "--alpha")?,
            self.beta.unwrap_or(0.0),
        )?)
    }
}

pub fn pencil(
    n: usize,
    lambdas: &[Complex64],
    random: bool,
    seed: u64,
    entries: PencilEntries,
    out: &OutputArgs,
) -> Result<u8, CliError> {
    let pencil = if random {
        if entries.any() {
            return Err(CliError::usage(
                "--random draws the pencil; drop the entry flags",
            ));
        }
        sample::random_pencil(&mut ChaCha8Rng::seed_from_u64(seed), n + 1)
    } else {
        entries.build()?
    };
    let ps = pencil_polynomials(&pencil, n)?;
    let rows_checked = n.saturating_sub(1);
    let residuals = lambdas
        .iter()
        .map(|&l| {
            Ok((
                l,
                pencil_residual(&pencil, &ps, l, rows_checked)?,
                pencil_residual_scale(&pencil, &ps, l, rows_checked)?,
            ))
        })
        .collect::<Result<Vec<_>, hypersum::Error>>()?;
    match out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut results = Map::new();
            results.insert("n".into(), n.into());
            results.insert(
                "p".into(),
                Value::Array(ps.iter().map(output::poly).collect()),
            );
            let res = residuals
                .iter()
                .map(|&(l, r, s)| {
                    let mut m = Map::new();
                    m.insert("lambda".into(), complex(l));
                    m.insert("residual".into(), num(r));
                    m.insert("scale".into(), num(s));
                    Value::Object(m)
                })
                .collect();
            results.insert("residuals".into(), Value::Array(res));
            let mut diagnostics = Map::new();
            diagnostics.insert("rows_checked".into(), rows_checked.into());
            diagnostics.insert(
                "source".into(),
                if random { "random" } else { "entries" }.into(),
            );
            finish_json("pencil", None, results, diagnostics, out)?;
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for (k, p) in ps.iter().enumerate() {
                poly_rows("p", k, p, &mut rows);
            }
            for (i, &(l, r, s)) in residuals.iter().enumerate() {
                rows.push(scalar_row("lambda", i, Some(l)));
                rows.push(scalar_row("residual", i, Some(Complex64::new(r, 0.0))));
                rows.push(scalar_row(
                    "residual_scale",
                    i,
                    Some(Complex64::new(s, 0.0)),
                ));
            }
            finish_csv(&POLY_HEADER, &rows, out)?;
        }
    }
    Ok(0)
}
