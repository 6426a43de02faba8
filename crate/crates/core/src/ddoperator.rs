//! Linear differential-difference operators
//! `L(z, f) = sum_k a_k(z) f^(d_k)(z + c_k) + v(z)`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exppoly::ExpPoly;
use crate::scalars::ExpArg;

/// Position of one operator term: evaluate the `dorder`-th derivative of `f`
/// at `z + shift`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Atom {
    pub shift: ExpArg,
    pub dorder: u32,
}

impl Atom {
    pub fn new(shift: ExpArg, dorder: u32) -> Self {
        Atom { shift, dorder }
    }

    /// `f(z)`.
    pub fn identity() -> Self {
        Atom::new(ExpArg::zero(), 0)
    }

    pub fn derivative(k: u32) -> Self {
        Atom::new(ExpArg::zero(), k)
    }

    pub fn shifted(shift: ExpArg) -> Self {
        Atom::new(shift, 0)
    }

    /// `(d^dorder f)(z + shift)`.
    pub fn apply(&self, f: &ExpPoly) -> Result<ExpPoly> {
        f.nth_derivative(self.dorder).shift(&self.shift)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LinOp {
    terms: BTreeMap<Atom, ExpPoly>,
    inhom: ExpPoly,
}

impl LinOp {
    pub fn zero() -> Self {
        LinOp::default()
    }

    pub fn new(terms: impl IntoIterator<Item = (Atom, ExpPoly)>, inhom: ExpPoly) -> Self {
        let mut op = LinOp { terms: BTreeMap::new(), inhom };
        for (a, c) in terms {
            op.add_term(a, c);
        }
        op
    }

    /// The operator `coeff * f^(dorder)(z + shift)`.
    pub fn single(atom: Atom, coeff: ExpPoly) -> Self {
        Self::new([(atom, coeff)], ExpPoly::zero())
    }

    pub fn inhomogeneous(v: ExpPoly) -> Self {
        Self::new([], v)
    }

    pub fn add_term(&mut self, atom: Atom, coeff: ExpPoly) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&atom) {
            Some(cur) => cur.add(&coeff),
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(atom, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &ExpPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, atom: &Atom) -> ExpPoly {
        self.terms.get(atom).cloned().unwrap_or_default()
    }

    pub fn inhom(&self) -> &ExpPoly {
        &self.inhom
    }

    pub fn homogeneous_part(&self) -> LinOp {
        LinOp { terms: self.terms.clone(), inhom: ExpPoly::zero() }
    }

    /// `sum coeff * (d^k f)(z + c) + inhom`.
    pub fn apply(&self, f: &ExpPoly) -> Result<ExpPoly> {
        let mut out = self.inhom.clone();
        for (atom, coeff) in &self.terms {
            out = out.add(&coeff.mul(&atom.apply(f)?));
        }
        Ok(out)
    }

    /// The operator `f -> d/dz [L(z, f(z))]`: every term `a f^(k)(z+c)` becomes
    /// `a' f^(k)(z+c) + a f^(k+1)(z+c)`, and `v` becomes `v'`.
    pub fn derivative(&self) -> LinOp {
        let mut out = LinOp::inhomogeneous(self.inhom.derivative());
        for (atom, coeff) in &self.terms {
            out.add_term(atom.clone(), coeff.derivative());
            out.add_term(Atom::new(atom.shift.clone(), atom.dorder + 1), coeff.clone());
        }
        out
    }

    /// `alpha * L1 + beta * L2`.
    pub fn linear_combine(alpha: &ExpPoly, l1: &LinOp, beta: &ExpPoly, l2: &LinOp) -> LinOp {
        let mut out = LinOp::inhomogeneous(alpha.mul(&l1.inhom).add(&beta.mul(&l2.inhom)));
        for (atom, c) in &l1.terms {
            out.add_term(atom.clone(), alpha.mul(c));
        }
        for (atom, c) in &l2.terms {
            out.add_term(atom.clone(), beta.mul(c));
        }
        out
    }

    pub fn add(&self, o: &LinOp) -> LinOp {
        Self::linear_combine(&ExpPoly::one(), self, &ExpPoly::one(), o)
    }

    /// Operator-level vanishing: every coefficient and the inhomogeneous part are zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.inhom.is_zero()
    }

    /// Vanishing of the composed function `L(z, f(z))` for one particular `f`.
    pub fn applied_is_zero(&self, f: &ExpPoly) -> Result<bool> {
        Ok(self.apply(f)?.is_zero())
    }

    /// Distinct nonzero shifts used by the homogeneous part.
    pub fn shifts(&self) -> Vec<ExpArg> {
        let mut out: Vec<ExpArg> = self.terms.keys().filter(|a| !a.shift.is_zero()).map(|a| a.shift.clone()).collect();
        out.dedup();
        out
    }
}
