//! Parameter sweeps. Cells are the Cartesian product of the grid axes in the
//! order given, the first axis varying slowest; a missing `n` axis counts as
//! a trailing axis with the single value `--n`.

use std::f64::consts::TAU;

use hypersum::literal::{AxisTarget, AxisValues, GridAxis};
use hypersum::pfq::convergence_report;
use hypersum::roots::{
    find_roots, min_pair_distance, reconstruction_error, zero_localization_conditions,
    DEFAULT_ROOT_TOL,
};
use hypersum::verify::gram_diagnostics;
use hypersum::{Complex64, HypParams};
use rayon::prelude::*;

use crate::output::{self, float_field, param_field};
use crate::{CliError, Format, OutputArgs, ParamArgs, SweepKind};

pub const THREADS_ENV: &str = "HYPERSUM_THREADS";
const CONVERGENCE_SAMPLES: usize = 64;

pub fn header(kind: SweepKind) -> &'static [&'static str] {
    match kind {
        SweepKind::Convergence => &[
            "cell",
            "p",
            "q",
            "a",
            "b",
            "n",
            "radius",
            "domain_class",
            "sup_error",
        ],
        SweepKind::RootModulus => &[
            "cell",
            "p",
            "q",
            "a",
            "b",
            "n",
            "min_modulus",
            "max_modulus",
            "min_pair_distance",
            "reconstruction_error",
            "conditions_hold",
        ],
        SweepKind::Gram => &[
            "cell",
            "p",
            "q",
            "a",
            "b",
            "n_max",
            "offdiag_ratio",
            "diag_rel_error",
            "hermitian_defect",
        ],
    }
}

/// Parameter slots filled from the base lists, each `None` slot to be
/// supplied by an axis.
fn slots(
    count: Option<usize>,
    list: Option<&Vec<Complex64>>,
    axes: &[GridAxis],
    upper: bool,
) -> Result<Vec<Option<Complex64>>, CliError> {
    let (count_flag, list_flag) = if upper {
        ("--p", "--a")
    } else {
        ("--q", "--b")
    };
    let indices = axes.iter().filter_map(|ax| match ax.target {
        AxisTarget::Upper(j) if upper => Some(j),
        AxisTarget::Lower(l) if !upper => Some(l),
        _ => None,
    });
    let max_axis = indices.clone().max().unwrap_or(0);
    let len = match (count, list) {
        (Some(c), Some(l)) if c != l.len() => {
            return Err(CliError::usage(format!(
                "{count_flag} {c} but {list_flag} lists {} value(s)",
                l.len()
            )))
        }
        (Some(c), _) => c,
        (None, Some(l)) => l.len(),
        (None, None) => max_axis,
    };
    if max_axis > len {
        return Err(CliError::usage(format!(
            "grid axis index {max_axis} exceeds {count_flag} {len}"
        )));
    }
    let mut out: Vec<Option<Complex64>> = match list {
        Some(l) => l.iter().copied().map(Some).collect(),
        None => vec![None; len],
    };
    for j in indices {
        out[j - 1] = None;
    }
    let covered: Vec<usize> = axes
        .iter()
        .filter_map(|ax| match ax.target {
            AxisTarget::Upper(j) if upper => Some(j),
            AxisTarget::Lower(l) if !upper => Some(l),
            _ => None,
        })
        .collect();
    for (i, v) in out.iter().enumerate() {
        if v.is_none() && !covered.contains(&(i + 1)) {
            return Err(CliError::usage(format!(
                "{list_flag} slot {} has no value and no grid axis",
                i + 1
            )));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
struct Cell {
    index: usize,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    n: usize,
}

fn cells(args: &ParamArgs, axes: &[GridAxis], default_n: usize) -> Result<Vec<Cell>, CliError> {
    for (i, ax) in axes.iter().enumerate() {
        if axes[..i].iter().any(|o| o.target == ax.target) {
            return Err(CliError::usage("each grid axis may appear once"));
        }
    }
    let a0 = slots(args.p, args.a.as_ref().map(|l| &l.0), axes, true)?;
    let b0 = slots(args.q, args.b.as_ref().map(|l| &l.0), axes, false)?;
    let mut axes = axes.to_vec();
    if !axes.iter().any(|ax| ax.target == AxisTarget::Degree) {
        axes.push(GridAxis {
            target: AxisTarget::Degree,
            values: AxisValues::Degree(vec![default_n]),
        });
    }
    let total: usize = axes.iter().map(|ax| ax.values.len()).product();
    let mut out = Vec::with_capacity(total);
    for index in 0..total {
        let (mut a, mut b, mut n) = (a0.clone(), b0.clone(), default_n);
        let mut rest = index;
        for ax in axes.iter().rev() {
            let k = rest % ax.values.len();
            rest /= ax.values.len();
            match (&ax.target, &ax.values) {
                (AxisTarget::Degree, AxisValues::Degree(v)) => n = v[k],
                (AxisTarget::Upper(j), AxisValues::Complex(v)) => a[j - 1] = Some(v[k]),
                (AxisTarget::Lower(l), AxisValues::Complex(v)) => b[l - 1] = Some(v[k]),
                _ => unreachable!("axis values match their target"),
            }
        }
        let fill = |v: Vec<Option<Complex64>>| {
            v.into_iter()
                .map(|x| x.expect("every slot covered"))
                .collect()
        };
        out.push(Cell {
            index,
            a: fill(a),
            b: fill(b),
            n,
        });
    }
    Ok(out)
}

fn run_cell(kind: SweepKind, cell: &Cell, radius: f64) -> Result<Vec<String>, CliError> {
    let params = HypParams::new(cell.a.clone(), cell.b.clone())?;
    let mut row = vec![
        cell.index.to_string(),
        params.p().to_string(),
        params.q().to_string(),
        param_field(params.a()),
        param_field(params.b()),
        cell.n.to_string(),
    ];
    match kind {
        SweepKind::Convergence => {
            let samples: Vec<Complex64> = (0..CONVERGENCE_SAMPLES)
                .map(|j| Complex64::from_polar(radius, TAU * j as f64 / CONVERGENCE_SAMPLES as f64))
                .collect();
            let report = convergence_report(&params, &[cell.n], &samples)?;
            row.push(float_field(radius));
            row.push(report.domain_class.as_str().into());
            row.push(
                report.rows[0]
                    .sup_error
                    .map_or_else(String::new, float_field),
            );
        }
        SweepKind::RootModulus => {
            let g = hypersum::hyp::gn_direct(&params, cell.n)?;
            let roots = if g.degree().unwrap_or(0) == 0 {
                Vec::new()
            } else {
                find_roots(&g, DEFAULT_ROOT_TOL)?
            };
            let moduli = roots.iter().map(|r| r.norm());
            row.push(float_field(moduli.clone().fold(f64::INFINITY, f64::min)));
            row.push(float_field(moduli.fold(f64::NEG_INFINITY, f64::max)));
            row.push(float_field(min_pair_distance(&roots)));
            row.push(float_field(reconstruction_error(&g, &roots)));
            row.push(zero_localization_conditions(&params).is_ok().to_string());
        }
        SweepKind::Gram => {
            let d = gram_diagnostics(&params, cell.n)?;
            row.push(float_field(d.offdiag_ratio));
            row.push(float_field(d.diag_rel_error));
            row.push(float_field(d.hermitian_defect));
        }
    }
    Ok(row)
}

fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::usage(format!(
                "{THREADS_ENV}={v} is not a positive integer"
            ))),
        },
    }
}

pub fn sweep(
    args: &ParamArgs,
    kind: SweepKind,
    axes: &[GridAxis],
    n: usize,
    radius: f64,
    out: &OutputArgs,
) -> Result<u8, CliError> {
    if out.format == Some(Format::Json) {
        return Err(CliError::usage("sweep writes CSV only"));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(CliError::usage(format!(
            "--radius {radius} must be positive and finite"
        )));
    }
    let cells = cells(args, axes, n)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_cap()? {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::domain(e.to_string()))?;
    let mut rows: Vec<(usize, Vec<String>)> = pool.install(|| {
        cells
            .par_iter()
            .map(|c| run_cell(kind, c, radius).map(|r| (c.index, r)))
            .collect::<Result<_, _>>()
    })?;
    rows.sort_by_key(|(i, _)| *i);
    let rows: Vec<Vec<String>> = rows.into_iter().map(|(_, r)| r).collect();
    output::emit(&output::csv_text(header(kind), &rows)?, out.out.as_deref())?;
    Ok(0)
}
