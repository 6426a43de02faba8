//! Turns parsed expressions into exact constants, exponential polynomials,
//! operators and equations.

use std::collections::{BTreeMap, BTreeSet};

use crate::ddoperator::{Atom, LinOp};
use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, ZPoly};
use crate::scalars::{Rat, Scalar};

use super::parser::{Ast, RESERVED};

/// Declared parameters and their exact bindings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Session {
    params: BTreeSet<String>,
    bindings: BTreeMap<String, Scalar>,
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    pub fn declare(&mut self, name: &str) -> Result<()> {
        let valid = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid || RESERVED.contains(&name) {
            return Err(Error::InvalidInput { what: format!("`{name}` cannot be used as a parameter name") });
        }
        self.params.insert(name.to_string());
        Ok(())
    }

    /// Binds a declared parameter to an exact constant; uses of the parameter
    /// are replaced by the value while lowering.
    pub fn bind(&mut self, name: &str, value: Scalar) -> Result<()> {
        if !self.params.contains(name) {
            return Err(Error::UndeclaredParameter { name: name.to_string() });
        }
        self.bindings.insert(name.to_string(), value);
        Ok(())
    }

    pub fn params(&self) -> impl Iterator<Item = &str> {
        self.params.iter().map(String::as_str)
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&str, &Scalar)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_bound(&self, name: &str) -> bool {
        self.bindings.contains_key(name)
    }

    pub fn scalar(&self, ast: &Ast) -> Result<Scalar> {
        let e = self.exppoly(ast)?;
        e.as_constant().ok_or_else(|| Error::InvalidInput { what: format!("expected a constant, got {e}") })
    }

    pub fn exppoly(&self, ast: &Ast) -> Result<ExpPoly> {
        self.lower(ast)?.into_exppoly()
    }

    pub fn zpoly(&self, ast: &Ast) -> Result<ZPoly> {
        let e = self.exppoly(ast)?;
        e.as_polynomial().ok_or_else(|| Error::InvalidInput { what: format!("expected a polynomial in z, got {e}") })
    }

    pub fn linop(&self, ast: &Ast) -> Result<LinOp> {
        let d = self.lower(ast)?;
        let mut op = LinOp::zero();
        let mut inhom = ExpPoly::zero();
        for (key, c) in d.0 {
            match key.as_slice() {
                [] => inhom = c,
                [atom] => op.add_term(atom.clone(), c),
                _ => {
                    return Err(Error::NotOfEquationForm {
                        reason: "the operator L must be linear in f and its shifts".into(),
                    })
                }
            }
        }
        Ok(op.add(&LinOp::inhomogeneous(inhom)))
    }

    /// `f^n + L(z,f) = q(z) exp(p(z))`.
    pub fn equation(&self, lhs: &Ast, rhs: &Ast) -> Result<Equation> {
        let form = |reason: &str| Error::NotOfEquationForm { reason: reason.into() };
        let rhs = self.lower(rhs)?;
        if rhs.has_f() {
            return Err(form("the right-hand side must not contain f"));
        }
        let rhs = rhs.into_exppoly()?;
        let (q, p) = match rhs.num_terms() {
            0 => (ZPoly::zero(), ZPoly::zero()),
            1 => {
                let (p, q) = rhs.terms().next().unwrap();
                (q.clone(), p.clone())
            }
            _ => return Err(form("the right-hand side must be a single term q(z)*exp(p(z))")),
        };

        let mut n = None;
        let mut op = LinOp::zero();
        let mut inhom = ExpPoly::zero();
        for (key, c) in self.lower(lhs)?.0 {
            match key.as_slice() {
                [] => inhom = c,
                [atom] => op.add_term(atom.clone(), c),
                many => {
                    if !many.iter().all(|a| *a == Atom::identity()) {
                        return Err(form("the only nonlinear term allowed is a power of f(z)"));
                    }
                    if !c.is_one() || n.is_some() {
                        return Err(form("the power of f must appear once, with coefficient 1"));
                    }
                    n = Some(many.len() as u32);
                }
            }
        }
        let n = n.ok_or_else(|| form("no power f^n with n >= 2 on the left-hand side"))?;
        Equation::new(n, op.add(&LinOp::inhomogeneous(inhom)), q, p)
    }

    fn lower(&self, ast: &Ast) -> Result<DD> {
        Ok(match ast {
            Ast::Int(n) => DD::constant(Scalar::from_rat(Rat::from_integer(n.clone()))),
            Ast::Z => DD::exppoly(ExpPoly::z()),
            Ast::I => DD::constant(Scalar::i()),
            Ast::Pi => DD::constant(Scalar::pi()),
            Ast::Param(name) => {
                if !self.params.contains(name) {
                    return Err(Error::UndeclaredParameter { name: name.clone() });
                }
                match self.bindings.get(name) {
                    Some(v) => DD::constant(v.clone()),
                    None => DD::constant(Scalar::param(name)),
                }
            }
            Ast::Exp(arg) => {
                let e = self.lower(arg)?.into_exppoly()?;
                let p = e.as_polynomial().ok_or_else(|| Error::NonPolynomialExponent { what: e.to_string() })?;
                DD::exppoly(ExpPoly::term(ZPoly::one(), p)?)
            }
            Ast::F { dorder, arg } => {
                let shift = match arg {
                    None => Scalar::zero(),
                    Some(a) => {
                        let e = self.exppoly(a)?;
                        let bad = || Error::NotOfEquationForm {
                            reason: format!("f must be applied to z + constant, not {e}"),
                        };
                        let p = e.as_polynomial().ok_or_else(bad)?;
                        if p.degree() != 1 || !p.coeff(1).is_one() {
                            return Err(bad());
                        }
                        p.constant_term()
                    }
                };
                DD::atom(Atom::new(shift.to_exparg()?, *dorder))
            }
            Ast::Neg(a) => self.lower(a)?.neg(),
            Ast::Add(a, b) => self.lower(a)?.add(&self.lower(b)?),
            Ast::Sub(a, b) => self.lower(a)?.add(&self.lower(b)?.neg()),
            Ast::Mul(a, b) => self.lower(a)?.mul(&self.lower(b)?),
            Ast::Div(a, b) => {
                let d = self.lower(b)?;
                let c = d
                    .as_constant()
                    .filter(Scalar::is_invertible)
                    .ok_or_else(|| Error::NonConstantDivisor { what: d.describe() })?;
                self.lower(a)?.scale(&c.invert()?)
            }
            Ast::Pow(a, k) => {
                let base = self.lower(a)?;
                if *k >= 0 {
                    let mut out = DD::constant(Scalar::one());
                    for _ in 0..*k {
                        out = out.mul(&base);
                    }
                    out
                } else {
                    let c = base.as_constant().ok_or_else(|| Error::NonConstantDivisor { what: base.describe() })?;
                    DD::constant(c.powi(*k)?)
                }
            }
        })
    }
}

/// Polynomial expressions in `f`-atoms with exponential-polynomial
/// coefficients, keyed by the sorted multiset of atoms in each monomial.
#[derive(Clone, Debug, Default)]
struct DD(BTreeMap<Vec<Atom>, ExpPoly>);

impl DD {
    fn constant(c: Scalar) -> Self {
        DD::exppoly(ExpPoly::constant(c))
    }

    fn exppoly(e: ExpPoly) -> Self {
        let mut m = BTreeMap::new();
        if !e.is_zero() {
            m.insert(Vec::new(), e);
        }
        DD(m)
    }

    fn atom(a: Atom) -> Self {
        DD(BTreeMap::from([(vec![a], ExpPoly::one())]))
    }

    fn has_f(&self) -> bool {
        self.0.keys().any(|k| !k.is_empty())
    }

    fn into_exppoly(mut self) -> Result<ExpPoly> {
        if self.has_f() {
            return Err(Error::InvalidInput { what: "f may only appear in equations and operators".into() });
        }
        Ok(self.0.remove(&Vec::new()).unwrap_or_default())
    }

    fn as_constant(&self) -> Option<Scalar> {
        match self.0.len() {
            0 => Some(Scalar::zero()),
            1 => self.0.get(&Vec::new()).and_then(ExpPoly::as_constant),
            _ => None,
        }
    }

    fn describe(&self) -> String {
        match self.clone().into_exppoly() {
            Ok(e) => e.to_string(),
            Err(_) => "an expression in f".into(),
        }
    }

    fn insert(&mut self, key: Vec<Atom>, c: ExpPoly) {
        let sum = match self.0.remove(&key) {
            Some(cur) => cur.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.0.insert(key, sum);
        }
    }

    fn add(&self, o: &DD) -> DD {
        let mut out = self.clone();
        for (k, c) in &o.0 {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> DD {
        DD(self.0.iter().map(|(k, c)| (k.clone(), c.neg())).collect())
    }

    fn scale(&self, s: &Scalar) -> DD {
        let mut out = DD::default();
        for (k, c) in &self.0 {
            out.insert(k.clone(), c.scale(s));
        }
        out
    }

    fn mul(&self, o: &DD) -> DD {
        let mut out = DD::default();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &o.0 {
                let mut key: Vec<Atom> = k1.iter().chain(k2).cloned().collect();
                key.sort();
                out.insert(key, c1.mul(c2));
            }
        }
        out
    }
}
