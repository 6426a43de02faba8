//! Instances of `f(z)^n + L(z, f) = q(z) exp(p(z))`, exact verification,
//! classification, and the `P`/`Q` elimination obtained by differentiating the
//! equation once.

use serde::Serialize;

use crate::ddoperator::{Atom, LinOp};
use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, ZPoly};
use crate::scalars::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Equation {
    pub n: u32,
    pub op: LinOp,
    /// Right-hand side factor `q(z)`; any constant part of the exponent is folded in here.
    pub q: ZPoly,
    /// Right-hand side exponent `p(z)`, always with zero constant term.
    pub p: ZPoly,
}

impl Equation {
    /// Builds an instance; a constant term of `p` is moved into `q` as `exp(p(0))`.
    pub fn new(n: u32, op: LinOp, q: ZPoly, p: ZPoly) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput { what: format!("the power of f must be at least 2, got {n}") });
        }
        let c0 = p.constant_term();
        let q = if c0.is_zero() { q } else { q.scale(&c0.exp_of()?) };
        Ok(Equation { n, op, q, p: p.without_constant() })
    }

    /// `q(z) exp(p(z))`.
    pub fn rhs(&self) -> ExpPoly {
        ExpPoly::term(self.q.clone(), self.p.clone()).expect("p has no constant term")
    }

    /// `f^n + L(z,f) - q e^p`; `f` solves the equation iff this is zero.
    pub fn residual(&self, f: &ExpPoly) -> Result<ExpPoly> {
        Ok(f.pow(self.n).add(&self.op.apply(f)?).sub(&self.rhs()))
    }

    pub fn verify(&self, f: &ExpPoly) -> Result<Verdict> {
        let r = self.residual(f)?;
        Ok(if r.is_zero() {
            Verdict::new(VerdictTag::Verified)
        } else {
            Verdict { witness: Some(r), ..Verdict::new(VerdictTag::NotASolution) }
        })
    }

    /// What the value-distribution results say about transcendental entire
    /// solutions of hyper-order below 1:
    ///
    /// - `q = 0` or `p` constant: no entire solution at all;
    /// - `n >= 3`: no transcendental entire solution of finite order;
    /// - `n = 2`: any such solution has `lambda_bar(f) = sigma(f) = deg p`.
    pub fn classify(&self) -> Verdict {
        if self.q.is_zero() || self.p.is_zero() {
            Verdict::new(VerdictTag::NoEntireSolution)
        } else if self.n >= 3 {
            Verdict::new(VerdictTag::NoTranscendentalFiniteOrder)
        } else {
            let d = self.p.degree() as u32;
            Verdict {
                constraints: Some(Constraints { sigma: d, lambda_bar: d }),
                ..Verdict::new(VerdictTag::ConstrainedN2)
            }
        }
    }

    /// Denominator-cleared elimination operators.
    ///
    /// Differentiating the equation and eliminating `exp(p)` gives
    /// `f^(n-1) P(z,f) = Q(z,f)` with `P = n f' - (p' + q'/q) f` and
    /// `Q = (p' + q'/q) L - L'`. Both are multiplied through by `q`:
    ///
    /// ```text
    /// P~ = q n D - (q p' + q') id
    /// Q~ = (q p' + q') L - q L'
    /// ```
    pub fn build_pq(&self) -> Result<PQPair> {
        if self.q.is_zero() {
            return Err(Error::InvalidInput { what: "P/Q elimination needs a nonzero q".into() });
        }
        let q = ExpPoly::poly(self.q.clone());
        let weight = ExpPoly::poly(self.q.mul(&self.p.derivative()).add(&self.q.derivative()));
        let p_op = LinOp::new(
            [(Atom::derivative(1), q.scale(&Scalar::from_int(self.n as i64))), (Atom::identity(), weight.neg())],
            ExpPoly::zero(),
        );
        let q_op = LinOp::linear_combine(&weight, &self.op, &q.neg(), &self.op.derivative());
        Ok(PQPair { p: p_op, q: q_op, cleared: self.q.clone() })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct PQPair {
    pub p: LinOp,
    pub q: LinOp,
    /// The multiplier `q(z)` used to clear `q'/q`.
    pub cleared: ZPoly,
}

impl PQPair {
    /// `f^(n-1) P~(f) - Q~(f)`, zero for every exact solution.
    pub fn defect(&self, n: u32, f: &ExpPoly) -> Result<ExpPoly> {
        Ok(f.pow(n - 1).mul(&self.p.apply(f)?).sub(&self.q.apply(f)?))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum VerdictTag {
    #[serde(rename = "NoEntireSolution_Lemma21")]
    NoEntireSolution,
    #[serde(rename = "NoTranscendentalFiniteOrder_Lemma24")]
    NoTranscendentalFiniteOrder,
    ConstrainedN2,
    Verified,
    NotASolution,
}

impl VerdictTag {
    pub fn name(self) -> &'static str {
        match self {
            VerdictTag::NoEntireSolution => "NoEntireSolution_Lemma21",
            VerdictTag::NoTranscendentalFiniteOrder => "NoTranscendentalFiniteOrder_Lemma24",
            VerdictTag::ConstrainedN2 => "ConstrainedN2",
            VerdictTag::Verified => "Verified",
            VerdictTag::NotASolution => "NotASolution",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Constraints {
    pub sigma: u32,
    pub lambda_bar: u32,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub constraints: Option<Constraints>,
    pub witness: Option<ExpPoly>,
}

impl Verdict {
    fn new(tag: VerdictTag) -> Self {
        Verdict { tag, constraints: None, witness: None }
    }
}
