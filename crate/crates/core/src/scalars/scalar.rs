use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::gauss::{GaussRat, Rat};
use super::mpoly::{MPoly, Monomial, Symbol};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// The argument `c` of a formal exponential `exp(c)`: a polynomial over Q(i) in
/// pi and the parameters. Stored arguments never carry an imaginary multiple of
/// the pi-linear monomial; that part is reduced to a root of unity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ExpArg(pub MPoly);

impl ExpArg {
    pub fn zero() -> Self {
        ExpArg(MPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn poly(&self) -> &MPoly {
        &self.0
    }

    pub fn add(&self, o: &ExpArg) -> ExpArg {
        ExpArg(self.0.add(&o.0))
    }

    pub fn neg(&self) -> ExpArg {
        ExpArg(self.0.neg())
    }

    pub fn scale(&self, c: &GaussRat) -> ExpArg {
        ExpArg(self.0.scale(c))
    }
}

impl fmt::Display for ExpArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Splits `exp(c)` into `exp(c')` times a root of unity.
///
/// Writes the pi-linear part of `c` as `i*pi*s + pi*t`. When `2s` is an integer,
/// `i*pi*s` is dropped and `i^(2s)` is returned as the multiplier, so that for
/// example `exp(2*pi*i)` becomes `1` and `exp(i*pi/2)` becomes `i`. Any other
/// rational `s` cannot be placed in a sound canonical form and is rejected.
pub fn reduce_pi(c: &ExpArg) -> Result<(ExpArg, GaussRat)> {
    let pi = Monomial::var(Symbol::Pi);
    let k = c.0.coeff(&pi);
    if k.im.is_zero() {
        return Ok((c.clone(), GaussRat::one()));
    }
    let twice = &k.im * Rat::from_integer(2.into());
    if !twice.is_integer() {
        return Err(Error::UnsupportedRootOfUnity { arg: c.to_string() });
    }
    let quarter_turns: i64 =
        twice.to_integer().try_into().map_err(|_| Error::UnsupportedRootOfUnity { arg: c.to_string() })?;
    let im_part = MPoly::term(pi, GaussRat::new(Rat::zero(), k.im.clone()));
    Ok((ExpArg(c.0.sub(&im_part)), GaussRat::i_pow(quarter_turns)))
}

/// An exact constant: a finite sum of `r_j * exp(c_j)` with pairwise distinct
/// reduced arguments `c_j` and nonzero rational-function coefficients `r_j`.
///
/// Distinct exponentials, pi and the parameters are treated as algebraically
/// independent, so a value is zero exactly when it has no terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<ExpArg, RatFunc>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Self::from_ratfunc(RatFunc::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_gauss(GaussRat::from_rat(r))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Self::from_rat(super::gauss::rat(n, d))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Self::from_ratfunc(RatFunc::constant(c))
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self::from_ratfunc(RatFunc::from_poly(p))
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(ExpArg::zero(), r);
        }
        Scalar { terms }
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussRat::i())
    }

    pub fn pi() -> Self {
        Self::from_poly(MPoly::var(Symbol::Pi))
    }

    pub fn param(name: &str) -> Self {
        Self::from_poly(MPoly::var(Symbol::param(name)))
    }

    /// `exp(c)`, with pi-reduction applied.
    pub fn exp(c: &ExpArg) -> Result<Self> {
        let (arg, unit) = reduce_pi(c)?;
        let mut terms = BTreeMap::new();
        terms.insert(arg, RatFunc::constant(unit));
        Ok(Scalar { terms })
    }

    /// `exp(self)`; `self` must be an exponential-free polynomial.
    pub fn exp_of(&self) -> Result<Self> {
        Self::exp(&self.to_exparg()?)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpArg, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_ratfunc().is_some_and(|r| r.is_one())
    }

    /// The coefficient if the value contains no exponential other than `exp(0)`.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => {
                let (c, r) = self.terms.iter().next().unwrap();
                c.is_zero().then(|| r.clone())
            }
            _ => None,
        }
    }

    pub fn as_gauss(&self) -> Option<GaussRat> {
        self.as_ratfunc()?.as_constant()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        let g = self.as_gauss()?;
        g.is_real().then_some(g.re)
    }

    /// Converts to an exponential argument: only exponential-free polynomials qualify.
    pub fn to_exparg(&self) -> Result<ExpArg> {
        match self.as_ratfunc() {
            Some(r) if r.is_polynomial() => Ok(ExpArg(r.num().clone())),
            _ => Err(Error::NonPolynomialExponent { what: self.to_string() }),
        }
    }

    pub fn from_exparg(c: &ExpArg) -> Self {
        Self::from_poly(c.0.clone())
    }

    fn insert(terms: &mut BTreeMap<ExpArg, RatFunc>, arg: ExpArg, r: RatFunc) {
        if r.is_zero() {
            return;
        }
        match terms.get_mut(&arg) {
            Some(cur) => {
                let s = cur.add(&r);
                if s.is_zero() {
                    terms.remove(&arg);
                } else {
                    *cur = s;
                }
            }
            None => {
                terms.insert(arg, r);
            }
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (c, r) in &o.terms {
            Self::insert(&mut terms, c.clone(), r.clone());
        }
        Scalar { terms }
    }

    pub fn neg(&self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(c, r)| (c.clone(), r.neg())).collect() }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        let mut terms = BTreeMap::new();
        for (c1, r1) in &self.terms {
            for (c2, r2) in &o.terms {
                // Stored arguments have no imaginary pi part, so neither does the sum.
                Self::insert(&mut terms, c1.add(c2), r1.mul(r2));
            }
        }
        Scalar { terms }
    }

    pub fn scale(&self, c: &GaussRat) -> Scalar {
        Scalar { terms: self.terms.iter().filter(|_| !c.is_zero()).map(|(a, r)| (a.clone(), r.scale(c))).collect() }
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Integer power; negative exponents require an invertible value.
    pub fn powi(&self, k: i64) -> Result<Scalar> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.invert()?.pow(k.unsigned_abs() as u32))
        }
    }

    fn single_term(&self) -> Option<(&ExpArg, &RatFunc)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.single_term().is_some()
    }

    /// `(r exp(c))^-1 = r^-1 exp(-c)`. Sums of two or more exponentials are not invertible.
    pub fn invert(&self) -> Result<Scalar> {
        let (c, r) = self.single_term().ok_or_else(|| Error::NotInvertible { what: self.to_string() })?;
        let inv = r.inv().ok_or_else(|| Error::NotInvertible { what: self.to_string() })?;
        let mut terms = BTreeMap::new();
        terms.insert(c.neg(), inv);
        Ok(Scalar { terms })
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&o.invert()?))
    }

    /// Both square roots `(s, -s)` of a single-term value `r exp(c)` whose
    /// coefficient `r` is a perfect square: `s = sqrt(r) exp(c/2)`.
    pub fn sqrt(&self) -> Result<(Scalar, Scalar)> {
        let err = || Error::NotAPerfectSquare { what: self.to_string() };
        if self.is_zero() {
            return Ok((Scalar::zero(), Scalar::zero()));
        }
        let (c, r) = self.single_term().ok_or_else(err)?;
        let root = r.sqrt().ok_or_else(err)?;
        let half = c.scale(&GaussRat::from_rat(super::gauss::rat(1, 2)));
        let s = Scalar::exp(&half)?.mul(&Scalar::from_ratfunc(root));
        let neg = s.neg();
        Ok((s, neg))
    }

    /// Substitutes exact values for parameters (each value an exponential-free
    /// polynomial, so that exponential arguments stay polynomial).
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Scalar>) -> Result<Scalar> {
        let sub_poly = |p: &MPoly| -> Scalar {
            p.fold_eval(
                Scalar::zero(),
                |c| Scalar::from_gauss(c.clone()),
                |s, e| bindings.get(s).cloned().unwrap_or_else(|| Scalar::from_poly(MPoly::var(s.clone()))).pow(e),
                |a, b| a.add(&b),
                |a, b| a.mul(&b),
            )
        };
        let mut acc = Scalar::zero();
        for (c, r) in &self.terms {
            let arg = sub_poly(c.poly());
            let e = arg.exp_of()?;
            let num = sub_poly(r.num());
            let den = sub_poly(r.den());
            acc = acc.add(&e.mul(&num).div(&den)?);
        }
        Ok(acc)
    }
}

impl fmt::Display for Scalar {
    /// Expression-grammar form, e.g. `(2 - exp(eta))*exp(-eta)` prints as
    /// `2*exp(-eta) - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        // Bare constant term first, then exponentials by descending argument.
        for (c, r) in self.terms.iter().rev() {
            parts.push(term_string(c, r));
        }
        if let Some(pos) = self.terms.keys().rev().position(ExpArg::is_zero) {
            let t = parts.remove(pos);
            parts.push(t);
        }
        for (k, (neg, body)) in parts.iter().enumerate() {
            if k == 0 {
                write!(f, "{}{body}", if *neg { "-" } else { "" })?;
            } else {
                write!(f, " {} {body}", if *neg { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

/// Sign and magnitude text of `r * exp(c)`.
fn term_string(c: &ExpArg, r: &RatFunc) -> (bool, String) {
    let (neg, mag) = signed_ratfunc(r);
    if c.is_zero() {
        return (neg, mag);
    }
    let e = format!("exp({c})");
    if mag == "1" {
        (neg, e)
    } else if r.num().len() > 1 && r.is_polynomial() {
        (neg, format!("({mag})*{e}"))
    } else {
        (neg, format!("{mag}*{e}"))
    }
}

/// Pulls a leading minus sign out of a rational function's printed form when
/// the numerator is a single negative term.
pub(crate) fn signed_ratfunc(r: &RatFunc) -> (bool, String) {
    if r.num().len() == 1 {
        let (m, c) = r.num().terms().next().unwrap();
        let (neg, mag) = super::mpoly::split_sign(c);
        if neg {
            let flipped = RatFunc::new(MPoly::term(m.clone(), mag), r.den().clone()).unwrap();
            return (true, flipped.to_string());
        }
    }
    (false, r.to_string())
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

crate::forward_ring_ops!(Scalar);

#[cfg(test)]
mod tests {
    use super::*;

    fn eta() -> Scalar {
        Scalar::param("eta")
    }
    fn exp(s: &Scalar) -> Scalar {
        s.exp_of().unwrap()
    }

    #[test]
    fn euler_identity_and_periodicity() {
        let i_pi = Scalar::i().mul(&Scalar::pi());
        assert_eq!(exp(&i_pi), Scalar::from_int(-1));
        assert_eq!(exp(&i_pi.scale(&GaussRat::from_int(2))), Scalar::one());
        assert_eq!(exp(&i_pi.scale(&GaussRat::from_rat(super::super::gauss::rat(1, 2)))), Scalar::i());
        assert_eq!(exp(&i_pi.scale(&GaussRat::from_rat(super::super::gauss::rat(-3, 2)))), Scalar::i());
    }

    #[test]
    fn unsupported_root_of_unity() {
        let arg = Scalar::i().mul(&Scalar::pi()).div(&Scalar::from_int(3)).unwrap();
        let e = arg.exp_of().unwrap_err();
        assert_eq!(e.code(), "UnsupportedRootOfUnity");
    }

    #[test]
    fn reduce_pi_idempotent() {
        let c = Scalar::i().mul(&Scalar::pi()).scale(&GaussRat::from_int(5)).add(&eta()).to_exparg().unwrap();
        let (once, u1) = reduce_pi(&c).unwrap();
        let (twice, u2) = reduce_pi(&once).unwrap();
        assert_eq!(once, twice);
        assert!(u2.is_one());
        assert_eq!(u1, GaussRat::from_int(-1));
    }

    #[test]
    fn arithmetic_examples() {
        let two_em = exp(&eta().neg()).scale(&GaussRat::from_int(2));
        // (2e^-eta - 1) + 1
        assert_eq!(two_em.sub(&Scalar::one()).add(&Scalar::one()), two_em);
        // e^eta * 2e^-eta
        assert_eq!(exp(&eta()).mul(&two_em), Scalar::from_int(2));
        let p = exp(&Scalar::pi());
        assert_eq!(p.mul(&p), exp(&Scalar::pi().scale(&GaussRat::from_int(2))));
    }

    #[test]
    fn zero_test() {
        assert!(Scalar::zero().is_zero());
        let e = exp(&eta());
        assert!(e.sub(&e).is_zero());
        assert!(!Scalar::one().add(&exp(&Scalar::pi())).is_zero());
    }

    #[test]
    fn inversion() {
        let x = exp(&eta().neg()).scale(&GaussRat::from_int(2));
        assert_eq!(x.invert().unwrap(), exp(&eta()).scale(&GaussRat::from_rat(super::super::gauss::rat(1, 2))));
        assert_eq!(Scalar::one().add(&exp(&Scalar::pi())).invert().unwrap_err().code(), "NotInvertible");
        assert_eq!(Scalar::rat(-1, 3).invert().unwrap(), Scalar::from_int(-3));
    }

    #[test]
    fn square_roots() {
        let (a, b) = Scalar::one().sqrt().unwrap();
        assert_eq!((a, b), (Scalar::one(), Scalar::from_int(-1)));
        let two_pi = Scalar::pi().scale(&GaussRat::from_int(2));
        let (a, b) = exp(&two_pi).scale(&GaussRat::from_int(4)).sqrt().unwrap();
        assert_eq!(a, exp(&Scalar::pi()).scale(&GaussRat::from_int(2)));
        assert_eq!(b, a.neg());
        assert_eq!(Scalar::from_int(2).sqrt().unwrap_err().code(), "NotAPerfectSquare");
    }

    #[test]
    fn display() {
        let v = Scalar::from_int(2).sub(&exp(&eta())).mul(&exp(&eta().neg()));
        assert_eq!(v.to_string(), "2*exp(-eta) - 1");
        let inv = Scalar::i().mul(&Scalar::pi()).scale(&GaussRat::from_int(2)).invert().unwrap();
        assert_eq!(inv.to_string(), "-1/2*i/pi");
    }
}
