//! Sparse multivariate polynomials over Q(i) in the indeterminates pi and the
//! declared parameters.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! lexicographic with `pi` as the most significant variable and parameters
//! after it in name order. The leading term is therefore the last map entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::gauss::{GaussRat, Rat};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Symbol {
    Pi,
    Param(Arc<str>),
}

impl Symbol {
    pub fn param(name: &str) -> Self {
        Symbol::Param(Arc::from(name))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Pi => write!(f, "pi"),
            Symbol::Param(name) => write!(f, "{name}"),
        }
    }
}

/// A power product, sorted by symbol, with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Symbol, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(pairs.len());
        for (s, e) in pairs {
            match out.last_mut() {
                Some((ls, le)) if *ls == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0.iter().find(|(t, _)| t == s).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            match (self.0.get(i), o.0.get(j)) {
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push(b.clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((a.0.clone(), a.1 + b.1));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (s, e) in &self.0 {
            let mut d = 0;
            if let Some((t, f)) = o.0.get(j) {
                match t.cmp(s) {
                    Ordering::Less => return None,
                    Ordering::Equal => {
                        d = *f;
                        j += 1;
                    }
                    Ordering::Greater => {}
                }
            }
            if d > *e {
                return None;
            }
            if e - d > 0 {
                out.push((s.clone(), e - d));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let pairs = self
            .0
            .iter()
            .filter_map(|(s, e)| {
                let f = o.exponent(s);
                (f > 0).then(|| (s.clone(), (*e).min(f)))
            })
            .collect();
        Monomial(pairs)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(s, e)| (s.clone(), e * k)).collect())
    }

    /// Removes every power of `s`, returning the exponent removed.
    fn split_off(&self, s: &Symbol) -> (u32, Monomial) {
        let e = self.exponent(s);
        let rest = self.0.iter().filter(|(t, _)| t != s).cloned().collect();
        (e, Monomial(rest))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    // a has a more significant variable that b lacks
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if a.1 != b.1 {
                            return a.1.cmp(&b.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::constant(GaussRat::from_rat(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRat::from_int(n))
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(Monomial::var(s), GaussRat::one())
    }

    pub fn term(m: Monomial, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, GaussRat)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Coefficient of a given monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> GaussRat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(GaussRat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// Sorted list of symbols that occur.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.terms.keys().flat_map(|m| m.factors().iter().map(|(s, _)| s.clone())).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn scale(&self, c: &GaussRat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussRat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let tm = rm.div(lm)?;
            let tc = rc * &lc_inv;
            rem = rem.sub(&d.mul_term(&tm, &tc));
            quot.add_term(tm, tc);
        }
        Some(quot)
    }

    /// Monomial content: the gcd of all monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    /// Coefficients with respect to `s`: `out[k]` multiplies `s^k`.
    pub fn to_univariate(&self, s: &Symbol) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(s) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(s);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_univariate(s: &Symbol, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let xk = Monomial::var(s.clone()).pow(k as u32);
            for (m, d) in &c.terms {
                out.add_term(m.mul(&xk), d.clone());
            }
        }
        out
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff().inv() {
            Some(inv) => self.scale(&inv),
            None => MPoly::zero(),
        }
    }

    /// Square root, if `self` is the square of a polynomial. The root is returned
    /// with the leading coefficient given by [`GaussRat::sqrt`].
    pub fn sqrt(&self) -> Option<MPoly> {
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let (lm, lc) = self.leading()?;
        if lm.factors().iter().any(|(_, e)| e % 2 != 0) {
            return None;
        }
        let lead = MPoly::term(Monomial(lm.factors().iter().map(|(s, e)| (s.clone(), e / 2)).collect()), lc.sqrt()?);
        let (lead_m, lead_c) = lead.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let twice_lead_inv = lead_c.scale(&Rat::from_integer(2.into())).inv()?;
        let mut root = lead;
        let mut last = lead_m.clone();
        loop {
            let rem = self.sub(&root.mul(&root));
            let Some((rm, rc)) = rem.leading() else {
                return Some(root);
            };
            let tm = rm.div(&lead_m)?;
            if tm >= last {
                return None;
            }
            let tc = rc * &twice_lead_inv;
            last = tm.clone();
            root = root.add(&MPoly::term(tm, tc));
        }
    }

    /// Evaluates with a caller-provided ring, used by the numeric evaluator.
    pub fn fold_eval<T>(
        &self,
        zero: T,
        mut coeff: impl FnMut(&GaussRat) -> T,
        mut symbol_pow: impl FnMut(&Symbol, u32) -> T,
        mut add: impl FnMut(T, T) -> T,
        mut mul: impl FnMut(T, T) -> T,
    ) -> T {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (s, e) in m.factors() {
                t = mul(t, symbol_pow(s, *e));
            }
            acc = add(acc, t);
        }
        acc
    }
}

impl fmt::Display for MPoly {
    /// Highest term first in the expression grammar, e.g. `2*i*pi - eta + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = split_sign(c);
            let body = if m.is_one() {
                mag.to_string()
            } else if mag.is_one() {
                m.to_string()
            } else {
                format!("{mag}*{m}")
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if neg { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

/// Splits off a printable sign: a coefficient counts as negative when its first
/// nonzero component is negative and it prints without parentheses.
pub(crate) fn split_sign(c: &GaussRat) -> (bool, GaussRat) {
    use num_traits::{Signed, Zero};
    let neg = if c.re.is_zero() { c.im.is_negative() } else { c.im.is_zero() && c.re.is_negative() };
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}
