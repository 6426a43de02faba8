//! The ring of exponential polynomials `sum_i p_i(z) exp(q_i(z))`.
//!
//! Exponent polynomials are kept free of constant terms: a constant part of an
//! exponent is folded into the coefficient as an exact `exp(c)` scalar, so
//! `exp(z + eta)` and `exp(eta) * exp(z)` have the same representation. With
//! distinct exponents never sharing a key, an exponential polynomial is zero
//! exactly when it has no terms.

mod zpoly;

use std::collections::BTreeMap;
use std::fmt;

pub use zpoly::ZPoly;

use crate::error::{Error, Result};
use crate::scalars::{ExpArg, Scalar};

/// Order and hyper-order of an entire function. Every exponential polynomial
/// has finite order, so `hyper_order` is always 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GrowthOrder {
    pub order: u32,
    pub hyper_order: u32,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ExpPoly {
    /// exponent (no constant term) -> nonzero coefficient polynomial
    terms: BTreeMap<ZPoly, ZPoly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn one() -> Self {
        Self::poly(ZPoly::one())
    }

    pub fn z() -> Self {
        Self::poly(ZPoly::z())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::poly(ZPoly::constant(c))
    }

    /// A plain polynomial.
    pub fn poly(p: ZPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(ZPoly::zero(), p);
        }
        ExpPoly { terms }
    }

    /// `coeff * exp(exponent)`; a constant term in the exponent is folded in.
    pub fn term(coeff: ZPoly, exponent: ZPoly) -> Result<Self> {
        let c0 = exponent.constant_term();
        let coeff = if c0.is_zero() { coeff } else { coeff.scale(&c0.exp_of()?) };
        let mut out = ExpPoly::zero();
        out.insert(exponent.without_constant(), coeff);
        Ok(out)
    }

    /// `exp(a z)` for a constant `a`.
    pub fn exp_linear(a: Scalar) -> Self {
        let mut out = ExpPoly::zero();
        out.insert(ZPoly::monomial(a, 1), ZPoly::one());
        out
    }

    fn insert(&mut self, exponent: ZPoly, coeff: ZPoly) {
        debug_assert!(exponent.constant_term().is_zero());
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponent) {
            Some(cur) => {
                let s = cur.add(&coeff);
                if s.is_zero() {
                    self.terms.remove(&exponent);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(exponent, coeff);
            }
        }
    }

    /// `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&ZPoly, &ZPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_polynomial().is_some_and(|p| p.is_one())
    }

    /// Coefficient of `exp(exponent)` (zero when absent).
    pub fn coeff_of(&self, exponent: &ZPoly) -> ZPoly {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    /// The polynomial part, i.e. the coefficient of `exp(0)`.
    pub fn polynomial_part(&self) -> ZPoly {
        self.coeff_of(&ZPoly::zero())
    }

    pub fn as_polynomial(&self) -> Option<ZPoly> {
        match self.terms.len() {
            0 => Some(ZPoly::zero()),
            1 => self.terms.get(&ZPoly::zero()).cloned(),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        let p = self.as_polynomial()?;
        p.is_constant().then(|| p.constant_term())
    }

    pub fn add(&self, o: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &ExpPoly) -> ExpPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.insert(e1.add(e2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (e, p) in &self.terms {
            out.insert(e.clone(), p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, p: &ZPoly) -> ExpPoly {
        self.mul(&ExpPoly::poly(p.clone()))
    }

    pub fn pow(&self, k: u32) -> ExpPoly {
        let mut acc = ExpPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `p exp(q)` maps to `(p' + p q') exp(q)`.
    pub fn derivative(&self) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (e, p) in &self.terms {
            out.insert(e.clone(), p.derivative().add(&p.mul(&e.derivative())));
        }
        out
    }

    pub fn nth_derivative(&self, k: u32) -> ExpPoly {
        (0..k).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// `f(z + shift)`. The constant term `q(shift)` of each shifted exponent is
    /// exponentiated exactly and folded into the coefficient.
    pub fn shift(&self, shift: &ExpArg) -> Result<ExpPoly> {
        if shift.is_zero() {
            return Ok(self.clone());
        }
        let s = Scalar::from_exparg(shift);
        let mut out = ExpPoly::zero();
        for (e, p) in &self.terms {
            let ps = p.shift(&s);
            let es = e.shift(&s);
            let c0 = es.constant_term();
            let coeff = if c0.is_zero() { ps } else { ps.scale(&c0.exp_of()?) };
            out.insert(es.without_constant(), coeff);
        }
        Ok(out)
    }

    /// Order (the largest exponent degree) and hyper-order.
    pub fn order(&self) -> Result<GrowthOrder> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let order = self.terms.keys().map(|e| e.degree() as u32).max().unwrap_or(0);
        Ok(GrowthOrder { order, hyper_order: 0 })
    }

    /// Applies `f` to every coefficient polynomial; exponents are unchanged.
    pub fn map_coeffs(&self, mut f: impl FnMut(&ZPoly) -> ZPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (e, p) in &self.terms {
            out.insert(e.clone(), f(p));
        }
        out
    }

    /// Applies an exact substitution to every constant, in coefficients and exponents.
    pub fn map_scalars(&self, f: &mut impl FnMut(&Scalar) -> Result<Scalar>) -> Result<ExpPoly> {
        let mut out = ExpPoly::zero();
        for (e, p) in &self.terms {
            let e2 = ZPoly::new(e.coeffs().iter().map(&mut *f).collect::<Result<_>>()?);
            let p2 = ZPoly::new(p.coeffs().iter().map(&mut *f).collect::<Result<_>>()?);
            out = out.add(&ExpPoly::term(p2, e2)?);
        }
        Ok(out)
    }
}

impl fmt::Display for ExpPoly {
    /// Exponential terms by descending exponent, polynomial part last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let ordered =
            self.terms.iter().rev().filter(|(e, _)| !e.is_zero()).chain(self.terms.iter().filter(|(e, _)| e.is_zero()));
        for (e, p) in ordered {
            let (neg, body) = if e.is_zero() {
                split_leading_minus(&p.to_string())
            } else {
                let ex = format!("exp({e})");
                if p.is_one() {
                    (false, ex)
                } else if p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
                    let (neg, body) = split_leading_minus(&p.to_string());
                    if body == "1" {
                        (neg, ex)
                    } else {
                        (neg, format!("{body}*{ex}"))
                    }
                } else {
                    (false, format!("({p})*{ex}"))
                }
            };
            if first {
                write!(f, "{}{body}", if neg { "-" } else { "" })?;
                first = false;
            } else if neg {
                write!(f, " - {body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

fn split_leading_minus(s: &str) -> (bool, String) {
    // only a whole-term minus, never one attached to a sum
    if let Some(rest) = s.strip_prefix('-') {
        if !rest.contains(" + ") && !rest.contains(" - ") {
            return (true, rest.to_string());
        }
    }
    (false, s.to_string())
}

crate::forward_ring_ops!(ExpPoly);
