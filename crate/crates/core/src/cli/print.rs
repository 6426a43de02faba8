//! Text forms of operators and equations in the input grammar.

use crate::ddoperator::{Atom, LinOp};
use crate::equation::Equation;
use crate::exppoly::ExpPoly;

/// Whether `s` is a sum or difference at the outermost level.
fn is_sum(s: &str) -> bool {
    let mut depth = 0i32;
    let b = s.as_bytes();
    for (k, &c) in b.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && k > 0 && b[k - 1] == b' ' => return true,
            _ => {}
        }
    }
    false
}

pub fn atom_text(a: &Atom) -> String {
    let head = match a.dorder {
        0 => "f".to_string(),
        k @ 1..=2 => format!("f{}", "'".repeat(k as usize)),
        k => format!("f^({k})"),
    };
    if a.shift.is_zero() {
        return head;
    }
    let s = a.shift.to_string();
    if is_sum(&s) {
        format!("{head}(z + ({s}))")
    } else if let Some(rest) = s.strip_prefix('-') {
        format!("{head}(z - {rest})")
    } else {
        format!("{head}(z + {s})")
    }
}

/// `coeff*factor` with the sign pulled to the front.
fn product(coeff: &ExpPoly, factor: &str) -> (bool, String) {
    let c = coeff.to_string();
    if c == "1" {
        return (false, factor.to_string());
    }
    if c == "-1" {
        return (true, factor.to_string());
    }
    if is_sum(&c) {
        return (false, format!("({c})*{factor}"));
    }
    match c.strip_prefix('-') {
        Some(rest) => (true, format!("{rest}*{factor}")),
        None => (false, format!("{c}*{factor}")),
    }
}

fn join(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (neg, body)) in parts.into_iter().enumerate() {
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else if let Some(rest) = body.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
            continue;
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

fn signed(e: &ExpPoly) -> (bool, String) {
    let s = e.to_string();
    if is_sum(&s) {
        return (false, s);
    }
    match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    }
}

fn operator_parts(op: &LinOp) -> Vec<(bool, String)> {
    let mut parts: Vec<(bool, String)> = op.terms().map(|(a, c)| product(c, &atom_text(a))).collect();
    if !op.inhom().is_zero() {
        parts.push(signed(op.inhom()));
    }
    parts
}

pub fn linop_text(op: &LinOp) -> String {
    join(operator_parts(op))
}

/// `f^n + L = q*exp(p)`.
pub fn equation_text(eq: &Equation) -> String {
    let mut parts = vec![(false, format!("f^{}", eq.n))];
    parts.extend(operator_parts(&eq.op));
    format!("{} = {}", join(parts), eq.rhs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ExpArg, MPoly, Scalar, Symbol};

    #[test]
    fn atoms() {
        let eta = ExpArg(MPoly::var(Symbol::param("eta")));
        assert_eq!(atom_text(&Atom::identity()), "f");
        assert_eq!(atom_text(&Atom::derivative(2)), "f''");
        assert_eq!(atom_text(&Atom::new(eta.clone(), 3)), "f^(3)(z + eta)");
        assert_eq!(atom_text(&Atom::shifted(eta.neg())), "f(z - eta)");
        let mixed = eta.add(&ExpArg(MPoly::one()));
        assert_eq!(atom_text(&Atom::shifted(mixed)), "f(z + (eta + 1))");
    }

    #[test]
    fn operators() {
        let op = LinOp::new(
            [(Atom::derivative(1), ExpPoly::z()), (Atom::identity(), ExpPoly::constant(Scalar::from_int(-2)))],
            ExpPoly::z().pow(2).sub(&ExpPoly::one()),
        );
        assert_eq!(linop_text(&op), "-2*f + z*f' + z^2 - 1");
        assert!(is_sum("a - b") && !is_sum("-a*(b - c)") && !is_sum("-1/2*z"));
    }
}
