//! The plain-text equation file.
//!
//! ```text
//! # comment
//! name = example31
//! params = eta
//! bindings eta = 1
//! n = 2
//! L = 2*exp(-eta)*z*f(z + eta) + exp(-eta)*f' - exp(-eta)*f + ...
//! q = 1
//! p = 2*z
//! ```
//!
//! `equation = <lhs> = <rhs>` may replace the `n`/`L`/`q`/`p` lines, and
//! `shift = <constant>` names the shift when `L` has no shifted term.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::scalars::{ExpArg, Scalar};

use super::lower::Session;
use super::parser::{parse_at, parse_equation_at, Origin};
use super::print::linop_text;

#[derive(Clone, Debug, PartialEq)]
pub struct EqFile {
    pub name: Option<String>,
    pub params: Vec<String>,
    pub bindings: Vec<(String, Scalar)>,
    pub shift: Option<ExpArg>,
    pub equation: Equation,
    /// Parameters and bindings in effect, for lowering further expressions.
    pub session: Session,
}

struct Line<'a> {
    number: usize,
    key: &'a str,
    /// For `bindings` lines, the bound name.
    target: Option<&'a str>,
    value: &'a str,
    origin: Origin,
}

fn split_lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let number = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let eq = content.find('=').ok_or_else(|| Error::SyntaxError {
            line: number,
            column: content.len() - content.trim_start().len() + 1,
            message: "expected `key = value`".into(),
        })?;
        let head = content[..eq].trim();
        let value_start = eq + 1 + (content[eq + 1..].len() - content[eq + 1..].trim_start().len());
        let value = content[value_start..].trim_end();
        let origin = Origin { line: number, column: content[..value_start].chars().count() + 1 };
        let mut words = head.split_whitespace();
        let key = words.next().unwrap_or("");
        let target = words.next();
        if words.next().is_some() || (target.is_some() != (key == "bindings")) {
            return Err(Error::SyntaxError {
                line: number,
                column: 1,
                message: format!("malformed line `{}`", raw.trim()),
            });
        }
        out.push(Line { number, key, target, value, origin });
    }
    Ok(out)
}

/// Reads an equation file. `base` supplies parameters and bindings declared
/// outside the file; its bindings take precedence over the file's.
pub fn parse_eqfile_with(text: &str, base: &Session) -> Result<EqFile> {
    let lines = split_lines(text)?;
    let mut fields: BTreeMap<&str, &Line<'_>> = BTreeMap::new();
    let mut binding_lines = Vec::new();
    for l in &lines {
        match l.key {
            "bindings" => binding_lines.push(l),
            "name" | "params" | "n" | "L" | "q" | "p" | "shift" | "equation" => {
                if fields.insert(l.key, l).is_some() {
                    return Err(Error::SyntaxError {
                        line: l.number,
                        column: 1,
                        message: format!("`{}` given twice", l.key),
                    });
                }
            }
            other => {
                return Err(Error::SyntaxError { line: l.number, column: 1, message: format!("unknown key `{other}`") })
            }
        }
    }

    let mut session = base.clone();
    let mut params = Vec::new();
    if let Some(l) = fields.get("params") {
        for name in l.value.split([',', ' ']).filter(|s| !s.is_empty()) {
            session.declare(name)?;
            params.push(name.to_string());
        }
    }
    let mut bindings = Vec::new();
    for l in binding_lines {
        let name = l.target.expect("bindings lines carry a name");
        let value = session.scalar(&parse_at(l.value, l.origin)?)?;
        bindings.push((name.to_string(), value.clone()));
        if !base.is_bound(name) {
            session.bind(name, value)?;
        }
    }

    let shift = match fields.get("shift") {
        Some(l) => Some(session.scalar(&parse_at(l.value, l.origin)?)?.to_exparg()?),
        None => None,
    };

    let equation = match fields.get("equation") {
        Some(l) => {
            if ["n", "L", "q", "p"].iter().any(|k| fields.contains_key(k)) {
                return Err(Error::InvalidInput {
                    what: "give either `equation` or the n, L, q, p lines, not both".into(),
                });
            }
            let (lhs, rhs) = parse_equation_at(l.value, l.origin)?;
            session.equation(&lhs, &rhs)?
        }
        None => {
            let get = |k: &str| {
                fields.get(k).copied().ok_or_else(|| Error::InvalidInput { what: format!("missing `{k} = ...` line") })
            };
            let n_line = get("n")?;
            let n: u32 = n_line.value.trim().parse().map_err(|_| Error::SyntaxError {
                line: n_line.number,
                column: n_line.origin.column,
                message: "n must be an integer".into(),
            })?;
            let l = get("L")?;
            let op = session.linop(&parse_at(l.value, l.origin)?)?;
            let q = get("q")?;
            let q = session.zpoly(&parse_at(q.value, q.origin)?)?;
            let p = get("p")?;
            let p = session.zpoly(&parse_at(p.value, p.origin)?)?;
            Equation::new(n, op, q, p)?
        }
    };

    Ok(EqFile { name: fields.get("name").map(|l| l.value.to_string()), params, bindings, shift, equation, session })
}

pub fn parse_eqfile(text: &str) -> Result<EqFile> {
    parse_eqfile_with(text, &Session::new())
}

/// Canonical text; reading it back gives the same file.
pub fn print_eqfile(f: &EqFile) -> String {
    let mut out = String::new();
    if let Some(name) = &f.name {
        let _ = writeln!(out, "name = {name}");
    }
    if !f.params.is_empty() {
        let _ = writeln!(out, "params = {}", f.params.join(", "));
    }
    for (name, value) in &f.bindings {
        let _ = writeln!(out, "bindings {name} = {value}");
    }
    if let Some(s) = &f.shift {
        let _ = writeln!(out, "shift = {s}");
    }
    let eq = &f.equation;
    let _ = writeln!(out, "n = {}", eq.n);
    let _ = writeln!(out, "L = {}", linop_text(&eq.op));
    let _ = writeln!(out, "q = {}", eq.q);
    let _ = writeln!(out, "p = {}", eq.p);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
# shifted example
name = demo
params = eta
n = 2
L = 2*exp(-eta)*z*f(z+eta) + exp(-eta)*f' - exp(-eta)*f + (2-exp(eta))*exp(-eta)*z^2 + (2*eta-1)*exp(-eta)*z + exp(-eta)
q = 1
p = 2*z
";

    #[test]
    fn reads_fields() {
        let f = parse_eqfile(EXAMPLE).unwrap();
        assert_eq!(f.name.as_deref(), Some("demo"));
        assert_eq!(f.params, vec!["eta".to_string()]);
        assert_eq!(f.equation.n, 2);
        assert_eq!(f.equation.op.terms().count(), 3);
    }

    #[test]
    fn round_trip() {
        let f = parse_eqfile(EXAMPLE).unwrap();
        let text = print_eqfile(&f);
        let g = parse_eqfile(&text).unwrap();
        assert_eq!(g.equation, f.equation);
        assert_eq!(print_eqfile(&g), text);
    }

    #[test]
    fn bindings_and_equation_line() {
        let text = "params = eta\nbindings eta = 1\nequation = f^2 + z*f(z+eta) = exp(2*z)\n";
        let f = parse_eqfile(text).unwrap();
        let shift = f.equation.op.shifts();
        assert_eq!(shift, vec![Scalar::one().to_exparg().unwrap()]);
        let again = parse_eqfile(&print_eqfile(&f)).unwrap();
        assert_eq!(again.equation, f.equation);
    }

    #[test]
    fn error_positions() {
        match parse_eqfile("n = 2\nL = z*f +\nq = 1\np = z\n").unwrap_err() {
            Error::SyntaxError { line, column, .. } => assert_eq!((line, column), (2, 10)),
            e => panic!("{e:?}"),
        }
        assert_eq!(parse_eqfile("n = 2\nL = f(z+eta)\nq = 1\np = z\n").unwrap_err().code(), "UndeclaredParameter");
        assert_eq!(parse_eqfile("n = 2\nwhat = 3\n").unwrap_err().code(), "SyntaxError");
        assert_eq!(parse_eqfile("n = 2\nq = 1\np = z\n").unwrap_err().code(), "InvalidInput");
    }
}
