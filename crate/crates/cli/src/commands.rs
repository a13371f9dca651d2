use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

use yrk::cartan::CartanData;
use yrk::drinfeld::drinfeld_tensor_at;
use yrk::error::YrkError;
use yrk::io::{content_hash, mat_to_json, ratmat_to_json};
use yrk::report::Report;
use yrk::repn::Representation;
use yrk::rfull::rfull;
use yrk::rminus::{rminus_recursive, rminus_sl2_closed_form};
use yrk::rzero::{abelian_a, rzero_series, Direction};
use yrk::scalar::{Backend, GaussRat, Scalar};
use yrk::series::PowerSeries;
use yrk::suite;
use yrk::tensor::standard_tensor_at;

use crate::args::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] YrkError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

/// What a command produced: a JSON artifact, a check report, or both.
#[derive(Default)]
struct Outcome {
    artifact: Option<Value>,
    report: Option<Report>,
}

enum Reps {
    Exact(Vec<Representation<GaussRat>>),
    Float(Vec<Representation<Complex64>>),
}

/// Run `$body` with `$v` bound to the loaded representations of either backend.
macro_rules! with_reps {
    ($reps:expr, $v:ident => $body:expr) => {
        match $reps {
            Reps::Exact($v) => $body,
            Reps::Float($v) => $body,
        }
    };
}

pub fn run(cli: &Cli) -> Result<bool> {
    let out = match &cli.command {
        Command::Rep(RepCmd::Build(a)) => rep_build(a)?,
        Command::Rep(RepCmd::Verify(a)) => rep_verify(a)?,
        Command::Tensor(a) => tensor(a)?,
        Command::Rminus(a) => rminus(a)?,
        Command::Rzero(a) => rzero(a)?,
        Command::Rfull(a) => rfull_cmd(a)?,
        Command::Check(a) => check(a)?,
        Command::Suite(SuiteCmd::Full { seed }) => Outcome { artifact: None, report: Some(suite::full_suite(*seed)) },
    };
    let pass = out.report.as_ref().is_none_or(Report::all_pass);
    if let Some(r) = &out.report {
        log::info!("{}: {} checks, all pass: {pass}", r.suite, r.checks.len());
    }
    write_output(cli, out)?;
    Ok(pass)
}

fn write_output(cli: &Cli, out: Outcome) -> Result<()> {
    let text = match (cli.format, out.artifact, out.report) {
        (Format::Csv, _, Some(r)) => r.to_csv(),
        (_, Some(mut a), Some(r)) => {
            a["report"] = serde_json::to_value(&r)?;
            serde_json::to_string_pretty(&a)? + "\n"
        }
        (_, None, Some(r)) => r.to_json_string() + "\n",
        (_, Some(a), None) => serde_json::to_string_pretty(&a)? + "\n",
        (_, None, None) => String::new(),
    };
    match &cli.output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn backend_of(v: &Value) -> Result<Backend> {
    match v.get("backend").and_then(Value::as_str) {
        Some("exact") => Ok(Backend::Exact),
        Some("float") => Ok(Backend::Float),
        Some(other) => Err(YrkError::Schema(format!("unknown backend `{other}`")).into()),
        None => Ok(Backend::from_env()),
    }
}

fn backend_name(b: Backend) -> &'static str {
    match b {
        Backend::Exact => "exact",
        Backend::Float => "float",
    }
}

/// Load representation files; all must share one backend. Returns the
/// representations and the content hash of the inputs.
fn load_reps(paths: &[&Path]) -> Result<(Reps, Backend, String)> {
    let mut bytes = Vec::new();
    let mut values = Vec::new();
    for p in paths {
        let b = read(p)?;
        values.push(serde_json::from_slice::<Value>(&b)?);
        bytes.extend(b);
    }
    let backend = backend_of(&values[0])?;
    for v in &values[1..] {
        if backend_of(v)? != backend {
            return Err(YrkError::BackendMismatch.into());
        }
    }
    let reps = match backend {
        Backend::Exact => Reps::Exact(values.iter().map(Representation::from_json).collect::<std::result::Result<_, _>>()?),
        Backend::Float => Reps::Float(values.iter().map(Representation::from_json).collect::<std::result::Result<_, _>>()?),
    };
    Ok((reps, backend, content_hash(&bytes)))
}

fn direction(d: DirectionArg) -> Direction {
    match d {
        DirectionArg::Up => Direction::Up,
        DirectionArg::Down => Direction::Down,
    }
}

fn point(s: &str) -> Result<Complex64> {
    Ok(<Complex64 as Scalar>::parse(s)?)
}

fn points(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(|x| point(x.trim())).collect()
}

fn series_json<F: Scalar>(s: &PowerSeries<F>) -> Value {
    Value::Array(s.coeffs().iter().map(mat_to_json).collect())
}

fn rep_build(a: &BuildArgs) -> Result<Outcome> {
    fn build<F: Scalar>(a: &BuildArgs) -> Result<Value> {
        let (x, h) = (F::parse(&a.a)?, F::parse(&a.hbar)?);
        let mut v = match a.kind.as_str() {
            "sl2-eval" => Representation::sl2_evaluation(x, h),
            "eval" => Representation::evaluation(CartanData::builtin(&a.cartan)?, x, h)?,
            other => return Err(CliError::Usage(format!("unknown representation type `{other}`; use sl2-eval or eval"))),
        };
        if let Some(c) = &a.scale_xm0 {
            v = v.with_scaled_xm0(&F::parse(c)?);
        }
        Ok(v.to_json())
    }
    let artifact = match a.backend {
        BackendArg::Exact => build::<GaussRat>(a)?,
        BackendArg::Float => build::<Complex64>(a)?,
    };
    Ok(Outcome { artifact: Some(artifact), report: None })
}

fn rep_verify(a: &VerifyArgs) -> Result<Outcome> {
    let start = Instant::now();
    let (reps, backend, hash) = load_reps(&[&a.rep])?;
    let tol = a.tol.unwrap_or(if backend == Backend::Exact { 0.0 } else { 1e-8 });
    let mut r = Report::new("rep verify", a.seed, backend_name(backend), hash);
    r.extend(with_reps!(reps, v => suite::relation_records("rep", &v[0], a.seed, tol)));
    r.finish(start.elapsed().as_secs_f64());
    Ok(Outcome { artifact: None, report: Some(r) })
}

fn tensor(a: &TensorArgs) -> Result<Outcome> {
    fn go<F: Scalar>(v: &[Representation<F>], a: &TensorArgs) -> Result<Value> {
        let s = F::parse(&a.s)?;
        let t = match a.mode.as_str() {
            "drinfeld" => drinfeld_tensor_at(&v[0], &v[1], &s)?,
            "standard" => standard_tensor_at(&v[0], &v[1], &s)?,
            other => return Err(CliError::Usage(format!("unknown tensor mode `{other}`; use drinfeld or standard"))),
        };
        Ok(t.to_json())
    }
    let (reps, _, _) = load_reps(&[&a.v1, &a.v2])?;
    Ok(Outcome { artifact: Some(with_reps!(reps, v => go(&v, a)?)), report: None })
}

fn rminus(a: &RminusArgs) -> Result<Outcome> {
    fn go<F: Scalar>(v: &[Representation<F>], a: &RminusArgs, hash: String) -> Result<Outcome> {
        let h: Option<Vec<F>> = a.h.as_deref().map(|s| s.split(',').map(|x| F::parse(x.trim())).collect()).transpose()?;
        let (v1, v2) = (&v[0], &v[1]);
        match a.method.as_str() {
            "recursion" => {
                let m = rminus_recursive(v1, v2, h.as_deref())?.matrix;
                Ok(Outcome { artifact: Some(json!({"method": "recursion", "matrix": ratmat_to_json(&m)})), report: None })
            }
            "closed" => {
                let m = rminus_sl2_closed_form(v1, v2)?;
                Ok(Outcome { artifact: Some(json!({"method": "closed", "matrix": ratmat_to_json(&m)})), report: None })
            }
            "both" => {
                let m = rminus_recursive(v1, v2, h.as_deref())?.matrix;
                let mut r = Report::new("rminus both", 0, backend_name(F::backend()), hash);
                r.push(suite::rminus_agreement("rminus.recursion_vs_closed", v1, v2));
                r.finish(0.0);
                Ok(Outcome { artifact: Some(json!({"method": "both", "matrix": ratmat_to_json(&m)})), report: Some(r) })
            }
            other => Err(CliError::Usage(format!("unknown method `{other}`; use recursion, closed or both"))),
        }
    }
    let (reps, _, hash) = load_reps(&[&a.pair.v1, &a.pair.v2])?;
    with_reps!(reps, v => go(&v, a, hash))
}

fn rzero(a: &RzeroArgs) -> Result<Outcome> {
    match (&a.cmd, (&a.v1, &a.v2, &a.s)) {
        (Some(RzeroCmd::Formal { pair, order }), _) => {
            let (reps, _, _) = load_reps(&[&pair.v1, &pair.v2])?;
            let coeffs = with_reps!(reps, v => series_json(&rzero_series(&v[0], &v[1], *order)?));
            Ok(Outcome { artifact: Some(json!({"order": order, "coefficients": coeffs})), report: None })
        }
        (Some(RzeroCmd::Eta { pair, samples, tol }), _) => {
            let pts = points(samples)?;
            let (reps, backend, hash) = load_reps(&[&pair.v1, &pair.v2])?;
            let start = Instant::now();
            let (values, checks) = with_reps!(reps, v => {
                let ab = abelian_a(&v[0], &v[1])?;
                let values = pts.iter().map(|&s| ab.eta(s, *tol).map(|m| mat_to_json(&m))).collect::<std::result::Result<Vec<_>, _>>()?;
                (values, suite::eta_period_checks("eta", &v[0], &v[1], &pts, *tol))
            });
            let mut r = Report::new("rzero eta", 0, backend_name(backend), hash);
            r.extend(checks);
            r.finish(start.elapsed().as_secs_f64());
            let pts: Vec<String> = pts.iter().map(|z| z.to_string()).collect();
            Ok(Outcome { artifact: Some(json!({"points": pts, "eta": values})), report: Some(r) })
        }
        (None, (Some(v1), Some(v2), Some(s))) => {
            let s = point(s)?;
            let dir = direction(a.direction);
            let (reps, backend, hash) = load_reps(&[v1, v2])?;
            let start = Instant::now();
            let (value, checks) = with_reps!(reps, v => {
                let value = abelian_a(&v[0], &v[1])?.product(s, dir, a.tol)?;
                (value, suite::rzero_point_checks("rzero", &v[0], &v[1], s, dir, a.tol))
            });
            let mut r = Report::new("rzero", 0, backend_name(backend), hash);
            r.extend(checks);
            r.finish(start.elapsed().as_secs_f64());
            let artifact = json!({
                "s": s.to_string(),
                "value": mat_to_json(&value.matrix),
                "factors": value.factors,
                "tail_estimate": value.tail_estimate,
            });
            Ok(Outcome { artifact: Some(artifact), report: Some(r) })
        }
        (None, _) => Err(CliError::Usage("rzero needs --v1, --v2 and --s, or a subcommand".into())),
    }
}

fn rfull_cmd(a: &RfullArgs) -> Result<Outcome> {
    let (reps, _, _) = load_reps(&[&a.pair.v1, &a.pair.v2])?;
    let dir = direction(a.direction);
    let artifact = match (&a.s, a.series) {
        (_, Some(order)) => with_reps!(reps, v => json!({"order": order, "coefficients": series_json(&rfull(&v[0], &v[1], dir)?.series(order)?)})),
        (Some(s), None) => {
            let s = point(s)?;
            with_reps!(reps, v => json!({"s": s.to_string(), "value": mat_to_json(&rfull(&v[0], &v[1], dir)?.eval(s, a.tol)?)}))
        }
        (None, None) => return Err(CliError::Usage("rfull needs --s or --series".into())),
    };
    Ok(Outcome { artifact: Some(artifact), report: None })
}

fn check(a: &CheckArgs) -> Result<Outcome> {
    let need = match a.kind {
        CheckKind::Qybe | CheckKind::Cabling => 3,
        CheckKind::Unitarity | CheckKind::Asymptotics => 2,
    };
    if a.reps.len() != need {
        return Err(CliError::Usage(format!("this check takes {need} representations, found {}", a.reps.len())));
    }
    let paths: Vec<&Path> = a.reps.iter().map(PathBuf::as_path).collect();
    let (reps, backend, hash) = load_reps(&paths)?;
    let dir = direction(a.direction);
    let start = Instant::now();
    let fixed = match (&a.s1, &a.s2) {
        (Some(x), Some(y)) => Some((x.as_str(), y.as_str())),
        (None, None) => None,
        _ => return Err(CliError::Usage("give both --s1 and --s2, or neither".into())),
    };
    let name = match a.kind {
        CheckKind::Qybe => "qybe",
        CheckKind::Cabling => "cabling",
        CheckKind::Unitarity => "unitarity",
        CheckKind::Asymptotics => "asymptotics",
    };
    // Standard tensors at generic points have irrational spectra, so cabling runs on floats.
    let reps = match (a.kind, reps) {
        (CheckKind::Cabling, Reps::Exact(v)) => Reps::Float(v.iter().map(Representation::to_float).collect()),
        (_, r) => r,
    };
    let checks = with_reps!(reps, v => match a.kind {
        CheckKind::Qybe => {
            let f = fixed.map(|(x, y)| Ok::<_, CliError>((point(x)?, point(y)?))).transpose()?;
            vec![suite::check_qybe(name, [&v[0], &v[1], &v[2]], dir, a.seed, a.samples, f, a.tol)]
        }
        CheckKind::Cabling => match fixed {
            Some((x, y)) => vec![suite::cabling_at(name, [&v[0], &v[1], &v[2]], dir, &Scalar::parse(x)?, &Scalar::parse(y)?, a.tol)],
            None => suite::check_cabling(name, [&v[0], &v[1], &v[2]], dir, a.seed, a.samples, a.tol),
        },
        CheckKind::Unitarity => suite::check_unitarity(name, &v[0], &v[1], a.seed, a.samples, a.tol),
        CheckKind::Asymptotics => vec![suite::check_asymptotics(name, &v[0], &v[1], dir, a.k)],
    });
    let mut r = Report::new(&format!("check {name}"), a.seed, backend_name(backend), hash);
    r.extend(checks);
    r.finish(start.elapsed().as_secs_f64());
    Ok(Outcome { artifact: None, report: Some(r) })
}
