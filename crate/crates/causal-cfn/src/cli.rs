//! Command-line front end: case inspection, evaluation over parameter lists
//! or grids, and the verification suites, all with deterministic
//! machine-readable output (floats serialized with 17 significant digits).

use std::fmt::Write as _;

use clap::{Parser, Subcommand};

use crate::cases::{self, CaseFile};
use crate::cayley::find_strongly_orthogonal;
use crate::cfn::{
    c_omega, c_total, c_zero, d_group, formal_dimension, group_case_c, spherical_factor,
    EpsTrace, HatSystem, SpectralParameter,
};
use crate::cones::{self, c_min_and_ck};
use crate::error::{Error, Result};
use crate::rat::parse_rat;
use crate::roots::{CausalRootDatum, RootKind};
use crate::special::EvalResult;
use crate::verify::{run_suite, Suite, VerifyConfig};

#[derive(Parser, Debug)]
#[command(
    name = "causal-cfn",
    about = "c-functions, convergence cones and formal dimensions for causal root data",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the c-functions and formal dimension at spectral parameters.
    Eval {
        /// Case file path or catalog label.
        #[arg(long)]
        case: String,
        /// Parameter coordinates `a,b,...` (rationals like `-5/2` stay
        /// exact); repeatable.
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambdas: Vec<String>,
        /// Ray grid `from:to:steps@d1,d2,...` evaluating at `t * direction`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Comma-separated selection of outputs.
        #[arg(long, default_value = "c_omega,c_zero,c,d_group,d,spherical_factor")]
        outputs: String,
        /// Output format.
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        out: String,
    },
    /// Run a verification suite; exit 0 iff every check passes.
    Verify {
        /// One of: cones, cfn, group_ratio, oracle, all.
        suite: String,
        /// Restrict to one case (path or label); defaults to the catalog.
        #[arg(long)]
        case: Option<String>,
        /// Seed for the sampling checks.
        #[arg(long)]
        seed: Option<u64>,
        /// Quadrature tolerance override for the oracles.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Inspect the case catalog or write a new group-type case file.
    Case {
        #[command(subcommand)]
        sub: CaseCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum CaseCmd {
    /// List the available cases.
    List,
    /// Print a case with its derived data.
    Show { label: String },
    /// Print a group-type case file for the given family and rank.
    NewGroup {
        family: String,
        rank: usize,
        /// `p` in su(p, q) for the A family.
        #[arg(long)]
        split: Option<usize>,
    },
}

/// Run the parsed command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Eval { case, lambdas, grid, outputs, out } => {
            cmd_eval(&case, &lambdas, grid.as_deref(), &outputs, &out)
        }
        Command::Verify { suite, case, seed, tol } => cmd_verify(&suite, case.as_deref(), seed, tol),
        Command::Case { sub } => cmd_case(sub),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

// ---------------------------------------------------------------------------
// JSON formatting: deterministic, 17 significant digits, no locale.
// ---------------------------------------------------------------------------

fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn fmt_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn fmt_f64_array(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|&x| fmt_f64(x)).collect();
    format!("[{}]", items.join(","))
}

fn fmt_eval(r: &EvalResult, trace: Option<&EpsTrace>) -> String {
    let mut s = format!("{{\"status\":{}", fmt_str(r.status.as_str()));
    let (value, log_value) = if r.is_finite() {
        (fmt_f64(r.to_f64()), fmt_f64(r.log_abs()))
    } else {
        ("null".to_string(), "null".to_string())
    };
    let _ = write!(s, ",\"value\":{value},\"log_value\":{log_value}");
    if let Some(t) = trace {
        let samples: Vec<String> = t
            .samples
            .iter()
            .map(|(e, v)| format!("[{},{}]", fmt_f64(*e), fmt_f64(*v)))
            .collect();
        let _ = write!(
            s,
            ",\"eps_trace\":{{\"direction\":{},\"samples\":[{}],\"extrapolated\":{}}}",
            fmt_f64_array(&t.direction),
            samples.join(","),
            fmt_f64(t.extrapolated)
        );
    }
    s.push('}');
    s
}

const UNAVAILABLE: &str = "{\"status\":\"unavailable\",\"value\":null,\"log_value\":null}";

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn parse_lambda(text: &str, dim: usize) -> Result<SpectralParameter> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    if tokens.len() != dim {
        return Err(Error::DimMismatch { expected: dim, got: tokens.len() });
    }
    let exact = tokens
        .iter()
        .all(|t| t.contains('/') || t.parse::<i64>().is_ok());
    if exact {
        let coords = tokens.iter().map(|t| parse_rat(t)).collect::<Result<Vec<_>>>()?;
        Ok(SpectralParameter::Exact(crate::rat::RationalVector::new(coords)))
    } else {
        let coords = tokens
            .iter()
            .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad coordinate `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectralParameter::Float(coords))
    }
}

fn parse_grid(spec: &str, dim: usize) -> Result<Vec<SpectralParameter>> {
    let (range, dir_text) = spec
        .split_once('@')
        .ok_or_else(|| Error::Parse("grid must look like from:to:steps@d1,d2,...".into()))?;
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse("grid range must be from:to:steps".into()));
    }
    let from: f64 =
        parts[0].parse().map_err(|_| Error::Parse(format!("bad grid start `{}`", parts[0])))?;
    let to: f64 =
        parts[1].parse().map_err(|_| Error::Parse(format!("bad grid end `{}`", parts[1])))?;
    let steps: usize =
        parts[2].parse().map_err(|_| Error::Parse(format!("bad step count `{}`", parts[2])))?;
    if steps == 0 {
        return Err(Error::Parse("grid needs at least one step".into()));
    }
    let dir = parse_lambda(dir_text, dim)?.to_f64_vec();
    Ok((0..steps)
        .map(|i| {
            let t = if steps == 1 {
                from
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            };
            SpectralParameter::Float(dir.iter().map(|d| t * d).collect())
        })
        .collect())
}

struct EvalRow {
    lambda: Vec<f64>,
    results: Vec<(String, String)>,
    csv_cells: Vec<(String, String, String, String)>,
    checks: (bool, bool, bool),
}

fn eval_one(
    datum: &CausalRootDatum,
    hat: Option<&HatSystem>,
    lam: &SpectralParameter,
    outputs: &[&str],
) -> Result<EvalRow> {
    let f = lam.to_f64_vec();
    let checks = (
        cones::rds_check_f64(datum, &f),
        cones::e_omega_check(datum, &f),
        cones::e_zero_check(datum, &f),
    );
    let mut results = Vec::new();
    let mut csv_cells = Vec::new();
    let mut push = |name: &str, json: String, status: String, value: String, log_value: String| {
        results.push((name.to_string(), json));
        csv_cells.push((name.to_string(), status, value, log_value));
    };
    let plain = |r: &EvalResult| {
        (
            fmt_eval(r, None),
            r.status.as_str().to_string(),
            if r.is_finite() { fmt_f64(r.to_f64()) } else { String::new() },
            if r.is_finite() { fmt_f64(r.log_abs()) } else { String::new() },
        )
    };
    for &name in outputs {
        match name {
            "c_omega" => {
                let r = c_omega(datum, lam)?;
                let (j, s, v, l) = plain(&r);
                push(name, j, s, v, l);
            }
            "c_zero" => {
                let r = c_zero(datum, lam)?;
                let (j, s, v, l) = plain(&r);
                push(name, j, s, v, l);
            }
            "c" => {
                let r = c_total(datum, lam)?;
                let (j, s, v, l) = plain(&r);
                push(name, j, s, v, l);
            }
            "d_group" => match hat {
                Some(h) => {
                    let r = d_group(h, lam);
                    let (j, s, v, l) = plain(&r);
                    push(name, j, s, v, l);
                }
                None => push(name, UNAVAILABLE.to_string(), "unavailable".into(), String::new(), String::new()),
            },
            "d" => match hat {
                Some(h) => {
                    let fd = formal_dimension(datum, h, lam)?;
                    let j = fmt_eval(&fd.value, fd.eps_trace.as_ref());
                    let s = fd.value.status.as_str().to_string();
                    let (v, l) = if fd.value.is_finite() {
                        (fmt_f64(fd.value.to_f64()), fmt_f64(fd.value.log_abs()))
                    } else {
                        (String::new(), String::new())
                    };
                    push(name, j, s, v, l);
                }
                None => push(name, UNAVAILABLE.to_string(), "unavailable".into(), String::new(), String::new()),
            },
            "spherical_factor" => match spherical_factor(datum, lam) {
                Ok(r) => {
                    let (j, s, v, l) = plain(&r);
                    push(name, j, s, v, l);
                }
                Err(Error::OutsideDomain) => {
                    push(name, UNAVAILABLE.to_string(), "unavailable".into(), String::new(), String::new())
                }
                Err(e) => return Err(e),
            },
            "group_c" => match group_case_c(datum, lam) {
                Ok(r) => {
                    let (j, s, v, l) = plain(&r);
                    push(name, j, s, v, l);
                }
                Err(_) => push(name, UNAVAILABLE.to_string(), "unavailable".into(), String::new(), String::new()),
            },
            other => return Err(Error::Parse(format!("unknown output `{other}`"))),
        }
    }
    Ok(EvalRow { lambda: f, results, csv_cells, checks })
}

fn cmd_eval(
    case_ref: &str,
    lambdas: &[String],
    grid: Option<&str>,
    outputs: &str,
    out_format: &str,
) -> Result<i32> {
    let case = cases::load_case(case_ref)?;
    let datum = case.to_datum()?;
    let hat = case.hat(&datum)?;
    let outputs: Vec<&str> = outputs.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let mut params: Vec<SpectralParameter> = Vec::new();
    for text in lambdas {
        params.push(parse_lambda(text, datum.ambient_dim)?);
    }
    if let Some(g) = grid {
        params.extend(parse_grid(g, datum.ambient_dim)?);
    }
    if params.is_empty() {
        return Err(Error::Parse("no parameters: pass --lambda or --grid".into()));
    }
    let mut stdout = String::new();
    if out_format == "csv" {
        stdout.push_str("case,lambda,output,status,value,log_value\n");
    }
    for lam in &params {
        let row = eval_one(&datum, hat.as_ref(), lam, &outputs)?;
        match out_format {
            "json" => {
                let results: Vec<String> = row
                    .results
                    .iter()
                    .map(|(k, v)| format!("{}:{}", fmt_str(k), v))
                    .collect();
                let line = format!(
                    "{{\"case\":{},\"lambda\":{},\"results\":{{{}}},\"checks\":{{\"rds\":{},\"e_omega\":{},\"e_zero\":{}}}}}",
                    fmt_str(&datum.label),
                    fmt_f64_array(&row.lambda),
                    results.join(","),
                    row.checks.0,
                    row.checks.1,
                    row.checks.2,
                );
                stdout.push_str(&line);
                stdout.push('\n');
            }
            "csv" => {
                let lam_text: Vec<String> = row.lambda.iter().map(|&x| fmt_f64(x)).collect();
                for (name, status, value, log_value) in &row.csv_cells {
                    let _ = writeln!(
                        stdout,
                        "{},{},{},{},{},{}",
                        datum.label,
                        lam_text.join(";"),
                        name,
                        status,
                        value,
                        log_value
                    );
                }
            }
            _ => unreachable!("clap validates the format"),
        }
    }
    print!("{stdout}");
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(suite: &str, case_ref: Option<&str>, seed: Option<u64>, tol: Option<f64>) -> Result<i32> {
    let suite: Suite = suite.parse()?;
    let cases = match case_ref {
        Some(r) => vec![cases::load_case(r)?],
        None => cases::catalog()?,
    };
    let mut cfg = VerifyConfig::default();
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(t) = tol {
        cfg.quad_tol = t;
    }
    let outcomes = run_suite(suite, &cases, &cfg)?;
    let all_pass = outcomes.iter().all(|o| o.pass);
    let checks: Vec<String> = outcomes
        .iter()
        .map(|o| {
            let dev = match o.deviation {
                Some(d) => fmt_f64(d),
                None => "null".to_string(),
            };
            format!(
                "{{\"name\":{},\"pass\":{},\"deviation\":{},\"detail\":{}}}",
                fmt_str(&o.name),
                o.pass,
                dev,
                fmt_str(&o.detail)
            )
        })
        .collect();
    println!(
        "{{\"suite\":{},\"seed\":{},\"checks\":[{}],\"pass\":{}}}",
        fmt_str(&format!("{suite:?}").to_lowercase()),
        cfg.seed,
        checks.join(","),
        all_pass
    );
    Ok(if all_pass { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// case
// ---------------------------------------------------------------------------

fn rational_strings(v: &crate::rat::RationalVector) -> String {
    let items: Vec<String> = v.coords().iter().map(|c| fmt_str(&c.to_string())).collect();
    format!("[{}]", items.join(","))
}

fn cmd_case(sub: CaseCmd) -> Result<i32> {
    match sub {
        CaseCmd::List => {
            let items: Vec<String> = cases::catalog()?
                .iter()
                .map(|c| {
                    format!(
                        "{{\"label\":{},\"family\":{},\"rank\":{},\"type\":{}}}",
                        fmt_str(&c.label),
                        fmt_str(&c.family),
                        c.rank,
                        fmt_str(&c.kind)
                    )
                })
                .collect();
            println!("{{\"cases\":[{}]}}", items.join(","));
            Ok(0)
        }
        CaseCmd::Show { label } => {
            let case = cases::load_case(&label)?;
            let datum = case.to_datum()?;
            let gset = find_strongly_orthogonal(&datum)?;
            let rsys = case.restricted(&datum)?;
            let (c_min, ck) = c_min_and_ck(&datum);
            let roots: Vec<String> = datum
                .positive()
                .iter()
                .map(|r| {
                    format!(
                        "{{\"root\":{},\"kind\":{},\"m\":{},\"m2\":{}}}",
                        rational_strings(&r.vector),
                        fmt_str(match r.kind {
                            RootKind::Compact => "compact",
                            RootKind::Noncompact => "noncompact",
                        }),
                        r.mult,
                        r.mult_double
                    )
                })
                .collect();
            let gammas: Vec<String> = gset.gammas.iter().map(rational_strings).collect();
            let h_basis: Vec<String> = gset.h_basis.iter().map(rational_strings).collect();
            let cmin_gens: Vec<String> = c_min.generators.iter().map(rational_strings).collect();
            let ck_gens: Vec<String> = ck.generators.iter().map(rational_strings).collect();
            println!(
                "{{\"label\":{},\"ambient_dim\":{},\"positive\":[{}],\"rho\":{},\"rho_k\":{},\"rho_n\":{},\"gammas\":[{}],\"h_basis\":[{}],\"sigma\":{{\"s\":{},\"mult_half_sum\":{},\"mult_full\":{},\"mult_half\":{}}},\"c_min_generators\":[{}],\"compact_coroot_generators\":[{}]}}",
                fmt_str(&datum.label),
                datum.ambient_dim,
                roots.join(","),
                rational_strings(&datum.rho),
                rational_strings(&datum.rho_k),
                rational_strings(&datum.rho_n),
                gammas.join(","),
                h_basis.join(","),
                rsys.s,
                rsys.mult_class1,
                rsys.mult_class2,
                rsys.mult_class3,
                cmin_gens.join(","),
                ck_gens.join(",")
            );
            Ok(0)
        }
        CaseCmd::NewGroup { family, rank, split } => {
            let fam: crate::roots::Family = family.parse()?;
            // Build once to validate and to produce a label.
            let datum = crate::roots::group_double(fam, rank, split)?;
            let case = CaseFile::group(&datum.label, fam, rank, split);
            println!("{}", serde_json::to_string_pretty(&case)?);
            Ok(0)
        }
    }
}
