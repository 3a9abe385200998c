use serde_json::{json, Value};
use unruh_otto::engine::{solve_grid, work_comparison};
use unruh_otto::oracle::{closed_form_scale, integrate_with};
use unruh_otto::response::j_terms;
use unruh_otto::{
    delta_p, j_function, perturbative_validity, Execution, QuadratureSpec, ReducedPoint,
    Representation, ResponseArgs, Worldline,
};

use crate::table::{emit, Cell, Table};
use crate::{Command, OracleArgs, Output, SweepArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Check(String),
    #[error("{0}")]
    NonConvergence(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Domain(_) | CliError::Io(_) => 2,
            CliError::NonConvergence(_) => 3,
        }
    }
}

impl From<unruh_otto::Error> for CliError {
    fn from(e: unruh_otto::Error) -> Self {
        use unruh_otto::Error as E;
        match e {
            E::Domain(m) => CliError::Domain(m),
            E::Consistency(m) => CliError::Check(m),
            other @ (E::TermCap { .. } | E::NonConvergence(_)) => {
                CliError::NonConvergence(other.to_string())
            }
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::DeltaP {
            a,
            p,
            v,
            coupling,
            output,
        } => {
            let point = ReducedPoint::new(a, p, v, coupling.g);
            let dp = delta_p(point)?;
            let verdict = perturbative_validity(point, coupling.margin)?;
            let j = j_function(ResponseArgs::new(-1.0 / a, point.contact_length()))?;
            let mut t = Table::new(&SHIFT_COLUMNS_WITH_DETAIL);
            t.push(vec![
                a.into(),
                p.into(),
                v.into(),
                coupling.g.into(),
                dp.into(),
                verdict.pass.into(),
                verdict.in_unit_interval.into(),
                verdict.ratio.into(),
                j.into(),
            ]);
            let params =
                json!({ "a": a, "p": p, "v": v, "g": coupling.g, "margin": coupling.margin });
            write(&t, &output, "delta-p", params)
        }
        Command::JFn { x, y, output } => {
            let terms = j_terms(ResponseArgs::new(x, y))?;
            let mut t = Table::new(&[
                "x",
                "y",
                "j",
                "switching",
                "heaviside",
                "lerch_order2",
                "lerch_order1",
            ]);
            t.push(vec![
                x.into(),
                y.into(),
                terms.total.into(),
                terms.switching.into(),
                terms.heaviside.into(),
                terms.lerch_order2.into(),
                terms.lerch_order1.into(),
            ]);
            write(&t, &output, "j-fn", json!({ "x": x, "y": y }))
        }
        Command::Trajectory {
            alpha,
            v,
            samples,
            output,
        } => {
            let w = Worldline::new(alpha, v)?;
            let mut t = Table::new(&["tau", "t", "x", "velocity"]);
            for e in w.sample(samples)? {
                t.push(vec![
                    e.tau.into(),
                    e.t.into(),
                    e.x.into(),
                    e.velocity.into(),
                ]);
            }
            write(
                &t,
                &output,
                "trajectory",
                json!({ "alpha": alpha, "v": v, "samples": samples }),
            )
        }
        Command::SweepA(args) => sweep(args, "sweep-a"),
        Command::SweepP(args) => sweep(args, "sweep-p"),
        Command::SolveGrid {
            a_hot,
            a_cold,
            v,
            coupling,
            sequential,
            output,
        } => {
            let mut points = Vec::new();
            for &h in &a_hot.values() {
                for &c in &a_cold.values() {
                    for &s in &v.values() {
                        points.push((h, c, s));
                    }
                }
            }
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let rows = solve_grid(&points, coupling.g, coupling.margin, exec)?;
            let mut t = Table::new(&[
                "a_H",
                "a_C",
                "v",
                "p0",
                "dp_hot",
                "feasible",
                "p0_in_range",
                "hot_valid",
                "cold_valid",
            ]);
            for s in rows {
                t.push(vec![
                    s.a_hot.into(),
                    s.a_cold.into(),
                    s.v.into(),
                    s.p0.into(),
                    s.dp_hot.into(),
                    s.feasible.into(),
                    s.p0_in_range.into(),
                    s.hot_validity.pass.into(),
                    s.cold_validity.pass.into(),
                ]);
            }
            let params = json!({
                "a_hot": a_hot.describe(),
                "a_cold": a_cold.describe(),
                "v": v.describe(),
                "g": coupling.g,
                "margin": coupling.margin,
            });
            write(&t, &output, "solve-grid", params)
        }
        Command::CompareClassical {
            a_hot,
            a_cold,
            v,
            gap_diff,
            g,
            output,
        } => {
            let rows = work_comparison(a_hot, a_cold, &v.values(), gap_diff, g)?;
            let mut t = Table::new(&["v", "w_unruh", "w_cl"]);
            for r in rows {
                t.push(vec![r.v.into(), r.w_unruh.into(), r.w_cl.into()]);
            }
            let params = json!({
                "a_hot": a_hot,
                "a_cold": a_cold,
                "v": v.describe(),
                "gap_diff": gap_diff,
                "g": g,
            });
            write(&t, &output, "compare-classical", params)
        }
        Command::OracleCheck(args) => oracle_check(args),
    }
}

const SHIFT_COLUMNS: [&str; 7] = ["a", "p", "v", "g", "delta_p", "valid", "in_unit_interval"];
const SHIFT_COLUMNS_WITH_DETAIL: [&str; 9] = [
    "a",
    "p",
    "v",
    "g",
    "delta_p",
    "valid",
    "in_unit_interval",
    "ratio",
    "j",
];

fn write(table: &Table, output: &Output, command: &str, params: Value) -> Result<()> {
    let text = table.render(output.format, command, params);
    emit(&text, output.out.as_deref())?;
    Ok(())
}

fn sweep(args: SweepArgs, command: &str) -> Result<()> {
    let (swept, name) = if command == "sweep-a" {
        (&args.a, "a")
    } else {
        (&args.p, "p")
    };
    if !swept.is_swept() {
        return Err(CliError::Domain(format!(
            "{command} needs a list or range for --{name}"
        )));
    }
    let g = args.coupling.g;
    let mut points = Vec::new();
    for &a in &args.a.values() {
        for &p in &args.p.values() {
            for &v in &args.v.values() {
                points.push(ReducedPoint::new(a, p, v, g));
            }
        }
    }
    let rows = Execution::Parallel.try_map(&points, |&pt| -> unruh_otto::Result<Vec<Cell>> {
        let dp = delta_p(pt)?;
        let verdict = perturbative_validity(pt, args.coupling.margin)?;
        Ok(vec![
            pt.a.into(),
            pt.p.into(),
            pt.v.into(),
            g.into(),
            dp.into(),
            verdict.pass.into(),
            verdict.in_unit_interval.into(),
        ])
    })?;
    let table = Table {
        columns: SHIFT_COLUMNS.to_vec(),
        rows,
    };
    let params = json!({
        "a": args.a.describe(),
        "p": args.p.describe(),
        "v": args.v.describe(),
        "g": g,
        "margin": args.coupling.margin,
    });
    write(&table, &args.output, command, params)
}

/// `(alpha, omega, T)` cells spanning a in {5, 15, 40, 100}, v in {0.3, 0.5, 0.8}
/// and both signs of omega.
fn default_oracle_grid() -> Vec<(f64, f64, f64)> {
    let mut cells = Vec::new();
    for a in [5.0, 15.0, 40.0, 100.0] {
        for v in [0.3f64, 0.5, 0.8] {
            for s in [-1.0, 1.0] {
                cells.push((1.0, s / a, 2.0 * v.atanh()));
            }
        }
    }
    cells
}

fn oracle_check(args: OracleArgs) -> Result<()> {
    let cells = match (args.alpha, args.omega, args.t) {
        (Some(a), Some(w), Some(t)) => vec![(a, w, t)],
        (None, None, None) => default_oracle_grid(),
        _ => {
            return Err(CliError::Domain(
                "--alpha, --omega and --t must be given together".into(),
            ))
        }
    };
    let reps = match args.representation.as_str() {
        "both" => vec![Representation::Sinh2d, Representation::Imagesum1d],
        other => vec![other.parse::<Representation>().map_err(CliError::Domain)?],
    };
    let defaults = QuadratureSpec::default();
    let spec = QuadratureSpec {
        epsilon_list: args.epsilons.clone().unwrap_or(defaults.epsilon_list),
        k_max: args.k_max.unwrap_or(defaults.k_max),
        abs_tol: args.abs_tol.unwrap_or(defaults.abs_tol),
        rel_tol: args.rel_tol.unwrap_or(defaults.rel_tol),
        window: args.window.unwrap_or(defaults.window),
        ..defaults
    };
    spec.validate()?;
    if !(args.tol_rel > 0.0 && args.tol_abs > 0.0) {
        return Err(CliError::Domain(
            "--tol-rel and --tol-abs must be positive".into(),
        ));
    }

    let jobs: Vec<(f64, f64, f64, Representation)> = cells
        .iter()
        .flat_map(|&(a, w, t)| reps.iter().map(move |&r| (a, w, t, r)))
        .collect();
    let sign = if args.expect_fail { -1.0 } else { 1.0 };
    let results =
        Execution::Parallel.try_map(&jobs, |&(a, w, t, rep)| -> unruh_otto::Result<_> {
            let closed = j_function(ResponseArgs::new(sign * w / a, a * t))?;
            let oracle = integrate_with(rep, a, w, t, &spec)?;
            Ok((closed, oracle))
        })?;

    let mut table = Table::new(&[
        "alpha",
        "omega",
        "t",
        "representation",
        "value_re",
        "value_im",
        "error_estimate",
        "compared",
        "closed_form",
        "abs_diff",
        "rel_diff",
        "pass",
    ]);
    let mut failures = 0usize;
    for (&(a, w, t, rep), (closed, oracle)) in jobs.iter().zip(&results) {
        let compared = if args.raw {
            oracle.value.re
        } else {
            closed_form_scale(oracle.value.re)
        };
        let abs_diff = (compared - closed).abs();
        let rel_diff = abs_diff / closed.abs();
        let pass = abs_diff <= (args.tol_rel * closed.abs()).max(args.tol_abs) && oracle.is_real();
        failures += usize::from(!pass);
        table.push(vec![
            a.into(),
            w.into(),
            t.into(),
            rep.name().into(),
            oracle.value.re.into(),
            oracle.value.im.into(),
            oracle.error_estimate.into(),
            compared.into(),
            (*closed).into(),
            abs_diff.into(),
            rel_diff.into(),
            pass.into(),
        ]);
    }
    let params = json!({
        "cells": cells.iter().map(|&(a, w, t)| json!({ "alpha": a, "omega": w, "t": t })).collect::<Vec<_>>(),
        "representation": args.representation,
        "spec": serde_json::to_value(&spec).expect("spec is plain data"),
        "tol_rel": args.tol_rel,
        "tol_abs": args.tol_abs,
        "raw": args.raw,
        "expect_fail": args.expect_fail,
    });
    let output = Output {
        format: args.format,
        out: args.out.clone(),
    };
    write(&table, &output, "oracle-check", params)?;
    if failures > 0 {
        return Err(CliError::Check(format!(
            "{failures} of {} oracle comparisons failed",
            jobs.len()
        )));
    }
    Ok(())
}
