use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use varbound::commutator::{check_exponents, evaluate_bounds, search_constant};
use varbound::linalg::{ComplexMatrix, DensityMatrix, C64};
use varbound::norms::norm;
use varbound::radii::{
    self, central_numerical_radius, max_variance, numerical_radius, numerical_range, quantum_variance,
};
use varbound::verify::{self, VerifyConfig};

use crate::matrix_file::{read_matrix, write_matrix, MatrixFile};
use crate::{Cli, Command, ComputeArgs, Quantity, SearchArgs, VerifyArgs};

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute(args) => compute(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Search(args) => search(&args),
    }
}

fn complex(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn vector(v: &[C64]) -> Value {
    json!({
        "re": v.iter().map(|z| z.re).collect::<Vec<_>>(),
        "im": v.iter().map(|z| z.im).collect::<Vec<_>>(),
    })
}

fn exponent(p: f64) -> Value {
    if p.is_infinite() {
        json!("inf")
    } else {
        json!(p)
    }
}

fn need<'a>(path: &'a Option<PathBuf>, flag: &str, what: &str) -> Result<&'a Path> {
    path.as_deref().ok_or_else(|| anyhow!("{flag} is required for {what}"))
}

fn load(path: &Option<PathBuf>, flag: &str, what: &str) -> Result<ComplexMatrix> {
    read_matrix(need(path, flag, what)?).with_context(|| flag.to_string())
}

fn emit(args: &ComputeArgs, value: Value, text: String) {
    let out = if args.json {
        serde_json::to_string_pretty(&value).expect("finite values serialize")
    } else {
        text
    };
    // a closed pipe (`| head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn compute(args: &ComputeArgs) -> Result<ExitCode> {
    if !(args.tol > 0.0) {
        bail!("--tol must be positive, got {}", args.tol);
    }
    match args.quantity {
        Quantity::Norm => {
            let x = load(&args.input, "--input", "norm")?;
            let v = norm(&x, &args.spec).context("--spec")?;
            emit(args, json!({ "spec": args.spec.to_string(), "value": v }), format!("{v:?}"));
        }
        Quantity::Radius => {
            let x = load(&args.input, "--input", "radius")?;
            let r = radii::radius(&x, args.kind)?;
            let certified = r.gap <= args.tol * (1.0 + r.value * r.value);
            emit(
                args,
                json!({
                    "kind": r.kind.to_string(),
                    "value": r.value,
                    "y_star": complex(r.y_star),
                    "primal_value": r.primal_value,
                    "gap": r.gap,
                    "certified": certified,
                    "membership_margin": r.membership_margin,
                    "witness": vector(r.witness.as_slice()),
                    "evals": r.evals,
                }),
                format!("{:?}", r.value),
            );
        }
        Quantity::Variance => {
            let x = load(&args.input, "--input", "variance")?;
            match &args.rho {
                Some(path) => {
                    let rho = DensityMatrix::new(read_matrix(path).context("--rho")?).context("--rho")?;
                    let v = quantum_variance(&x, &rho, args.kind)?;
                    emit(args, json!({ "kind": args.kind.to_string(), "value": v }), format!("{v:?}"));
                }
                None => {
                    let m = max_variance(&x, args.kind, radii::DEFAULT_RESTARTS)?;
                    emit(
                        args,
                        json!({
                            "kind": args.kind.to_string(),
                            "value": m.value,
                            "maximized": true,
                            "witness": vector(m.witness.as_slice()),
                        }),
                        format!("{:?}", m.value),
                    );
                }
            }
        }
        Quantity::Numrange => {
            let x = load(&args.input, "--input", "numrange")?;
            let nr = numerical_range(&x, args.samples).context("--samples")?;
            let w = numerical_radius(&x)?;
            let text = nr
                .boundary_points
                .iter()
                .map(|z| format!("{:?} {:?}", z.re, z.im))
                .collect::<Vec<_>>()
                .join("\n");
            emit(
                args,
                json!({
                    "numerical_radius": w,
                    "angles": nr.angles,
                    "support_values": nr.support_values,
                    "boundary_points": vector(&nr.boundary_points),
                }),
                text,
            );
        }
        Quantity::Wradius => {
            let x = load(&args.input, "--input", "wradius")?;
            let c = central_numerical_radius(&x)?;
            emit(
                args,
                json!({
                    "value": c.value,
                    "lower": c.lower,
                    "center": complex(c.z_star),
                    "iterations": c.iterations,
                    "numerical_radius": numerical_radius(&x)?,
                }),
                format!("{:?}", c.value),
            );
        }
        Quantity::CommutatorBounds => {
            check_exponents(args.p, args.q, args.r).context("--p/--q/--r")?;
            let x = load(&args.x, "--x", "commutator-bounds")?;
            let y = load(&args.y, "--y", "commutator-bounds")?;
            let rep = evaluate_bounds(&x, &y, args.p, args.q, args.r)?;
            let holds = |slack: f64, value: f64| slack >= -args.tol * (1.0 + value);
            let all = rep.bounds.iter().all(|b| holds(b.slack, b.value));
            let bounds: Vec<Value> = rep
                .bounds
                .iter()
                .map(|b| {
                    json!({
                        "name": b.name,
                        "lhs": b.lhs,
                        "value": b.value,
                        "holds": holds(b.slack, b.value),
                        "slack": b.slack,
                    })
                })
                .collect();
            let mut text = format!("lhs {:?}\nratio {}", rep.lhs, rep.ratio.map_or("undefined".into(), |r| format!("{r:?}")));
            for b in &rep.bounds {
                let mark = if holds(b.slack, b.value) { "holds" } else { "VIOLATED" };
                text.push_str(&format!("\n{} {:?} {mark} (slack {:e})", b.name, b.value, b.slack));
            }
            emit(
                args,
                json!({
                    "p": exponent(args.p),
                    "q": exponent(args.q),
                    "r": exponent(args.r),
                    "lhs": rep.lhs,
                    "ratio": rep.ratio,
                    "bounds": bounds,
                }),
                text,
            );
            if !all {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let cfg = VerifyConfig {
        suite: args.suite,
        trials: args.trials,
        dim_max: args.dim_max,
        seed: args.seed,
        tol: args.tol,
    };
    let report = verify::run(&cfg).context("--trials/--dim-max/--tol")?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = serde_json::to_string_pretty(&report)?;
    match &args.report {
        Some(path) => {
            std::fs::write(path, text + "\n").with_context(|| format!("--report {}", path.display()))?;
            for c in &report.checks {
                let status = if c.fail == 0 { "PASS" } else { "FAIL" };
                println!("{status} {} ({}/{} trials, worst slack {:e})", c.id, c.pass, c.pass + c.fail, c.worst_slack);
            }
        }
        None => println!("{text}"),
    }
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} check failure(s)", report.failures());
        Ok(ExitCode::from(1))
    }
}

fn search(args: &SearchArgs) -> Result<ExitCode> {
    check_exponents(args.p, args.q, args.r)
        .context("--p/--q/--r")?;
    let s = search_constant(args.p, args.q, args.r, &args.dims, args.trials, args.seed)
        .context("--dims/--trials")?;
    if s.exceeds_conjecture {
        eprintln!(
            "WARNING: best ratio {:?} exceeds the conjectured constant {:?}; witness is a falsification candidate",
            s.best_ratio,
            s.conjectured.unwrap_or(f64::NAN)
        );
    }
    if let Some(prefix) = &args.save_witness {
        let with = |suffix: &str| {
            let mut p = prefix.clone().into_os_string();
            p.push(suffix);
            PathBuf::from(p)
        };
        write_matrix(&with("_x.json"), &s.witness_x).context("--save-witness")?;
        write_matrix(&with("_y.json"), &s.witness_y).context("--save-witness")?;
    }
    let out = json!({
        "p": exponent(s.p),
        "q": exponent(s.q),
        "r": exponent(s.r),
        "best_ratio": s.best_ratio,
        "conjectured": s.conjectured,
        "gap": s.gap(),
        "exceeds_conjecture": s.exceeds_conjecture,
        "witness_source": s.witness_source,
        "trials": s.trials,
        "skipped": s.skipped,
        "dims_tried": s.dims_tried,
        "seed": s.seed,
        "witness_x": MatrixFile::from_matrix(&s.witness_x),
        "witness_y": MatrixFile::from_matrix(&s.witness_y),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}
