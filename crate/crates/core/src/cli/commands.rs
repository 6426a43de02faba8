use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::growth::{geometric_radii, lambda_estimate, zero_count, EstimatePath, NumericContext};
use crate::solver::{solve_theorem31, synthesize_v, Roots, SolutionSet, SolveTag, T31Instance, ROOT_SYMBOL};

use super::eqfile::{parse_eqfile_with, print_eqfile, EqFile};
use super::lower::Session;
use super::parser::parse;
use super::print::equation_text;

#[derive(Parser, Debug)]
#[command(name = "ddeq", version, about = "Exact solving and checking of f^n + L(z,f) = q(z) exp(p(z))")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Working precision in bits for numeric commands.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: usize,
    /// Extra parameter names, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub params: Vec<String>,
    /// Exact parameter binding `name=value`; may be repeated.
    #[arg(long = "bind", global = true)]
    pub bind: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check whether an exponential polynomial solves the equation exactly.
    Verify {
        eqfile: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Solve f^2 + g f(z+eta) + h f' + u f + v = b exp(a z) in closed form.
    Solve {
        eqfile: PathBuf,
        /// Use this square root of b.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// Compute the free term v that makes the instance solvable.
    Synthesize {
        eqfile: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::V)]
        emit: Emit,
    },
    /// Report what is known about transcendental entire solutions.
    Classify { eqfile: PathBuf },
    /// Count zeros inside circles |z| = r.
    Zeros {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long = "r", value_delimiter = ',', required = true)]
        r: Vec<f64>,
    },
    /// Estimate the exponent of convergence of the zeros.
    Growth {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// `geometric:start,ratio,count` or a comma separated list.
        #[arg(long, default_value = "geometric:10,2,5")]
        radii: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    V,
    Equation,
}

/// Exit status and printed report of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

struct Report {
    code: i32,
    json: Value,
    text: String,
}

/// Expressions in JSON reports are printed without spaces.
fn compact(s: impl ToString) -> String {
    s.to_string().chars().filter(|c| !c.is_whitespace()).collect()
}

pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string() };
            }
            let err = Error::InvalidInput { what: e.to_string().trim().to_string() };
            return error_outcome(&err, wants_json);
        }
    };
    match run(&cli) {
        Ok(r) => Outcome {
            code: r.code,
            stdout: if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&r.json).expect("json"))
            } else {
                r.text
            },
        },
        Err(e) => error_outcome(&e, cli.json),
    }
}

fn error_outcome(e: &Error, json: bool) -> Outcome {
    let stdout = if json {
        let v = json!({"status": "error", "error": {"code": e.code(), "message": e.to_string()}});
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
    } else {
        format!("error [{}]: {e}\n", e.code())
    };
    Outcome { code: 1, stdout }
}

fn base_session(cli: &Cli) -> Result<Session> {
    let mut s = Session::new();
    for p in &cli.params {
        s.declare(p.trim())?;
    }
    for b in &cli.bind {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput { what: format!("--bind expects name=value, got `{b}`") })?;
        let name = name.trim();
        s.declare(name)?;
        let v = s.scalar(&parse(value)?)?;
        s.bind(name, v)?;
    }
    Ok(s)
}

fn load(path: &Path, base: &Session) -> Result<EqFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_eqfile_with(&text, base)
}

fn label(f: &EqFile, path: &Path) -> String {
    f.name.clone().unwrap_or_else(|| path.display().to_string())
}

fn run(cli: &Cli) -> Result<Report> {
    let base = base_session(cli)?;
    match &cli.command {
        Command::Verify { eqfile, f } => verify(eqfile, f, &base),
        Command::Solve { eqfile, c } => solve(eqfile, c.as_deref(), &base),
        Command::Synthesize { eqfile, emit } => synthesize(eqfile, *emit, &base),
        Command::Classify { eqfile } => classify(eqfile, &base),
        Command::Zeros { expr, r } => zeros(expr, r, cli.precision, &base),
        Command::Growth { expr, radii } => growth(expr, radii, cli.precision, &base),
    }
}

fn verify(path: &Path, f: &str, base: &Session) -> Result<Report> {
    let file = load(path, base)?;
    let f = file.session.exppoly(&parse(f)?)?;
    let eq = &file.equation;
    let verdict = eq.verify(&f)?;
    let name = label(&file, path);
    let tag = verdict.tag.name();
    let mut json = json!({ "command": "verify", "equation": name, "f": compact(&f), "status": tag });
    let mut text = format!("{name}: {tag}\n");
    if let Some(w) = &verdict.witness {
        json["residual"] = Value::String(compact(w));
        text.push_str(&format!("residual: {w}\n"));
    }
    // a transcendental solution for n >= 3 would contradict the classification
    if verdict.witness.is_none() && eq.n >= 3 && f.order().map(|o| o.order > 0).unwrap_or(false) {
        json["soundness_warning"] = Value::String("transcendental solution verified with n >= 3".into());
        text.push_str("warning: transcendental solution verified with n >= 3; please report this input\n");
    }
    let code = if verdict.witness.is_none() { 0 } else { 2 };
    Ok(Report { code, json, text })
}

fn solution_json(set: &SolutionSet) -> (Value, String) {
    let mut json = json!({ "status": set.tag.name() });
    let mut text = format!("{}\n", set.tag.name());
    if let Some(f0) = &set.f0 {
        json["f0"] = Value::String(compact(f0));
        text.push_str(&format!("f0 = {f0}\n"));
    }
    json["solutions"] = Value::Array(set.solutions.iter().map(|s| Value::String(compact(s))).collect());
    for s in &set.solutions {
        text.push_str(&format!("f = {s}\n"));
    }
    match &set.roots {
        Some(Roots::Exact(p, m)) => json["roots"] = json!([compact(p), compact(m)]),
        Some(Roots::Symbolic { c, b }) => {
            let constraint = format!("{c}^2 = {b}");
            text.push_str(&format!("with {constraint}\n"));
            json["constraint"] = Value::String(compact(constraint));
        }
        None => {}
    }
    if let Some(d) = &set.diagnostic {
        json["failed_identity"] = Value::String(d.identity.name().into());
        text.push_str(&format!("failed identity: {}\n", d.identity.name()));
        if let Some(r) = &d.residual {
            json["residual"] = Value::String(compact(r));
            text.push_str(&format!("residual: {r}\n"));
        }
    }
    (json, text)
}

fn solve(path: &Path, c: Option<&str>, base: &Session) -> Result<Report> {
    let file = load(path, base)?;
    let inst = T31Instance::from_equation(&file.equation, file.shift.as_ref())?;
    let c = match c {
        Some(text) => {
            let mut s = file.session.clone();
            if !s.params().any(|p| p == ROOT_SYMBOL) {
                s.declare(ROOT_SYMBOL)?;
            }
            Some(s.scalar(&parse(text)?)?)
        }
        None => None,
    };
    let set = solve_theorem31(&inst, c.as_ref())?;
    let (mut json, text) = solution_json(&set);
    json["command"] = Value::String("solve".into());
    json["equation"] = Value::String(label(&file, path));
    let code = if set.tag == SolveTag::TwoSolutions { 0 } else { 2 };
    Ok(Report { code, json, text })
}

fn synthesize(path: &Path, emit: Emit, base: &Session) -> Result<Report> {
    let file = load(path, base)?;
    let inst = T31Instance::from_equation(&file.equation, file.shift.as_ref())?;
    let syn = synthesize_v(&inst.g, &inst.h, &inst.u, &inst.a, &inst.b, &inst.eta)?;
    let (mut json, mut text) = solution_json(&syn.solutions);
    json["command"] = Value::String("synthesize".into());
    json["v"] = Value::String(compact(&syn.v));
    match emit {
        Emit::V => text = format!("v = {}\n{text}", syn.v),
        Emit::Equation => {
            let out = EqFile { equation: syn.instance.equation(), ..file };
            let printed = print_eqfile(&out);
            json["equation_file"] = Value::String(printed.clone());
            json["equation"] = Value::String(equation_text(&out.equation));
            text = printed;
        }
    }
    Ok(Report { code: 0, json, text })
}

fn classify(path: &Path, base: &Session) -> Result<Report> {
    let file = load(path, base)?;
    let v = file.equation.classify();
    let name = label(&file, path);
    let mut json = json!({ "command": "classify", "equation": name, "verdict": v.tag.name(), "n": file.equation.n });
    let mut text = format!("{name}: {}\n", v.tag.name());
    if let Some(c) = v.constraints {
        json["sigma"] = json!(c.sigma);
        json["lambda_bar"] = json!(c.lambda_bar);
        text.push_str(&format!("sigma(f) = lambda_bar(f) = {}\n", c.sigma));
    }
    Ok(Report { code: 0, json, text })
}

fn numeric_input(expr: &str, precision: usize, base: &Session) -> Result<(ExpPoly, NumericContext)> {
    let f = base.exppoly(&parse(expr)?)?;
    let ctx = NumericContext::new(precision)?;
    Ok((f, ctx))
}

fn zeros(expr: &str, radii: &[f64], precision: usize, base: &Session) -> Result<Report> {
    let (f, ctx) = numeric_input(expr, precision, base)?;
    let counts = radii.iter().map(|&r| zero_count(&f, r, &ctx)).collect::<Result<Vec<_>>>()?;
    let mut text = String::new();
    for c in &counts {
        text.push_str(&format!(
            "n({}) = {}   (raw {:.3e} off, {} samples)\n",
            c.requested_radius, c.count, c.deviation, c.samples
        ));
    }
    let json = json!({ "command": "zeros", "f": compact(&f), "precision": precision, "counts": counts });
    Ok(Report { code: 0, json, text })
}

fn parse_radii(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidInput { what: format!("bad radii schedule `{spec}`") };
    if let Some(rest) = spec.strip_prefix("geometric:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let [start, ratio, count] = parts.as_slice() else { return Err(bad()) };
        let start: f64 = start.parse().map_err(|_| bad())?;
        let ratio: f64 = ratio.parse().map_err(|_| bad())?;
        let count: usize = count.parse().map_err(|_| bad())?;
        return Ok(geometric_radii(start, ratio, count));
    }
    spec.split(',').map(|s| s.trim().parse::<f64>().map_err(|_| bad())).collect()
}

fn growth(expr: &str, radii: &str, precision: usize, base: &Session) -> Result<Report> {
    let (f, ctx) = numeric_input(expr, precision, base)?;
    let radii = parse_radii(radii)?;
    let report = lambda_estimate(&f, &radii, &ctx)?;
    let mut json = serde_json::to_value(&report).expect("json");
    json["command"] = Value::String("growth".into());
    json["f"] = Value::String(compact(&f));
    let mut text = String::new();
    for (r, n) in report.radii.iter().zip(&report.counts) {
        text.push_str(&format!("n({r}) = {n}\n"));
    }
    match report.path {
        EstimatePath::Slope => text.push_str(&format!("{} = {:.4}\n", report.label, report.lambda_hat)),
        EstimatePath::TooFewZeros => text.push_str("too few zeros: finitely many zeros, exponent 0\n"),
    }
    if let Some((lo, hi)) = report.confidence {
        text.push_str(&format!("95% interval [{lo:.4}, {hi:.4}]\n"));
    }
    text.push_str(&format!("sigma(f) = {}, hyper order {}\n", report.sigma, report.hyper_order));
    Ok(Report { code: 0, json, text })
}
