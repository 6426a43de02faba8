//! Closed-form solving of `f^2 + g f(z+eta) + h f' + u f + v = b exp(a z)`.
//!
//! Every finite order entire solution is `f = c exp(a z / 2) + f0` with
//! `c^2 = b` and `f0 = -(exp(a eta / 2) g + (a/2) h + u) / 2`, subject to the
//! polynomial identity `f0^2 + g f0(z+eta) + h f0' + u f0 + v = 0`.

use crate::ddoperator::{Atom, LinOp};
use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, ZPoly};
use crate::scalars::{ExpArg, Scalar, Symbol};

/// `2 f'(z) - a f(z) = H(z)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OdeInstance {
    pub a: Scalar,
    pub h: ZPoly,
}

/// The polynomial particular solution of `2 f' - a f = H`, of the same degree as `H`.
///
/// With `H = sum lambda_j z^j` of degree `n` the coefficients are
/// `b_n = -lambda_n / a` and `b_j = (2 (j+1) b_{j+1} - lambda_j) / a`.
pub fn solve_linear_ode_poly(inst: &OdeInstance) -> Result<ZPoly> {
    if inst.h.is_zero() {
        return Err(Error::InvalidInput { what: "right-hand side H must be a nonzero polynomial".into() });
    }
    let inv_a = inst.a.invert()?;
    let n = inst.h.degree();
    let mut b = vec![Scalar::zero(); n + 1];
    b[n] = inst.h.coeff(n).neg().mul(&inv_a);
    for j in (0..n).rev() {
        let up = b[j + 1].mul(&Scalar::from_int(2 * (j as i64 + 1)));
        b[j] = up.sub(&inst.h.coeff(j)).mul(&inv_a);
    }
    Ok(ZPoly::new(b))
}

/// `f^2 + L(z,f) = b exp(a z)` with `L = g f(z+eta) + h f' + u f + v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct T31Instance {
    pub g: ZPoly,
    pub h: ZPoly,
    pub u: ZPoly,
    pub v: ZPoly,
    pub a: Scalar,
    pub b: Scalar,
    pub eta: ExpArg,
}

impl T31Instance {
    pub fn new(g: ZPoly, h: ZPoly, u: ZPoly, v: ZPoly, a: Scalar, b: Scalar, eta: ExpArg) -> Result<Self> {
        if a.is_zero() || b.is_zero() || eta.is_zero() {
            return Err(Error::OutOfTheoremScope { reason: "a, b and eta must all be nonzero".into() });
        }
        for (name, s) in [("a", &a), ("b", &b)] {
            if !s.is_invertible() {
                return Err(Error::NotInvertible { what: format!("{name} = {s}") });
            }
        }
        Ok(T31Instance { g, h, u, v, a, b, eta })
    }

    /// Reads the coefficients off a general equation. `shift` supplies `eta`
    /// when the operator has no shift term of its own (i.e. `g = 0`).
    pub fn from_equation(eq: &Equation, shift: Option<&ExpArg>) -> Result<Self> {
        let scope = |reason: &str| Error::OutOfTheoremScope { reason: reason.into() };
        if eq.n != 2 {
            return Err(scope("the power of f must be 2"));
        }
        if !eq.q.is_constant() || eq.q.is_zero() {
            return Err(scope("the right-hand side factor must be a nonzero constant b"));
        }
        if eq.p.degree() != 1 {
            return Err(scope("the right-hand side exponent must be a*z"));
        }
        let shifts = eq.op.shifts();
        let eta = match (shifts.as_slice(), shift) {
            ([], Some(s)) => s.clone(),
            ([], None) => return Err(scope("the operator has no shift term and no shift was given")),
            ([s], given) => {
                if given.is_some_and(|g| g != s) {
                    return Err(scope("the given shift differs from the operator's shift"));
                }
                s.clone()
            }
            _ => return Err(scope("the operator uses more than one shift")),
        };
        let (mut g, mut h, mut u) = (ZPoly::zero(), ZPoly::zero(), ZPoly::zero());
        for (atom, coeff) in eq.op.terms() {
            let c = coeff.as_polynomial().ok_or_else(|| scope("operator coefficients must be polynomials"))?;
            match (atom.shift.is_zero(), atom.dorder) {
                (false, 0) => g = c,
                (true, 1) => h = c,
                (true, 0) => u = c,
                _ => return Err(scope("only f(z+eta), f' and f may appear in the operator")),
            }
        }
        let v = eq.op.inhom().as_polynomial().ok_or_else(|| scope("the free term v must be a polynomial"))?;
        T31Instance::new(g, h, u, v, eq.p.coeff(1), eq.q.constant_term(), eta)
    }

    pub fn op(&self) -> LinOp {
        LinOp::new(
            [
                (Atom::shifted(self.eta.clone()), ExpPoly::poly(self.g.clone())),
                (Atom::derivative(1), ExpPoly::poly(self.h.clone())),
                (Atom::identity(), ExpPoly::poly(self.u.clone())),
            ],
            ExpPoly::poly(self.v.clone()),
        )
    }

    pub fn equation(&self) -> Equation {
        Equation::new(2, self.op(), ZPoly::constant(self.b.clone()), ZPoly::monomial(self.a.clone(), 1))
            .expect("n = 2 and p has no constant term")
    }

    /// `-(exp(a eta / 2) g + (a/2) h + u) / 2`.
    pub fn f0(&self) -> Result<ZPoly> {
        f0_of(&self.g, &self.h, &self.u, &self.a, &self.eta)
    }

    /// `f0^2 + g f0(z+eta) + h f0' + u f0 + v`.
    pub fn consistency(&self, f0: &ZPoly) -> Result<ZPoly> {
        Ok(homogeneous_consistency(&self.g, &self.h, &self.u, &self.eta, f0)?.add(&self.v))
    }
}

fn f0_of(g: &ZPoly, h: &ZPoly, u: &ZPoly, a: &Scalar, eta: &ExpArg) -> Result<ZPoly> {
    let half = Scalar::rat(1, 2);
    let growth = Scalar::exp(&a.mul(&half).mul(&Scalar::from_exparg(eta)).to_exparg()?)?;
    let sum = g.scale(&growth).add(&h.scale(&a.mul(&half))).add(u);
    Ok(sum.scale(&half.neg()))
}

fn homogeneous_consistency(g: &ZPoly, h: &ZPoly, u: &ZPoly, eta: &ExpArg, f0: &ZPoly) -> Result<ZPoly> {
    let shifted = f0.shift(&Scalar::from_exparg(eta));
    Ok(f0.mul(f0).add(&g.mul(&shifted)).add(&h.mul(&f0.derivative())).add(&u.mul(f0)))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolveTag {
    TwoSolutions,
    NoFiniteOrderSolution,
}

impl SolveTag {
    pub fn name(self) -> &'static str {
        match self {
            SolveTag::TwoSolutions => "TwoSolutions",
            SolveTag::NoFiniteOrderSolution => "NoFiniteOrderSolution",
        }
    }
}

/// Which of the conditions for `c exp(a z/2) + f0` to be a solution failed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Identity {
    /// `f0` vanishes identically, which would force `L(z,f) = 0`.
    F0Nonzero,
    CSquaredEqualsB,
    /// `2 f0 + exp(a eta/2) g + (a/2) h + u = 0`.
    ExponentialCoefficient,
    /// `f0^2 + g f0(z+eta) + h f0' + u f0 + v = 0`.
    VConsistency,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::F0Nonzero => "f0_nonzero",
            Identity::CSquaredEqualsB => "c_squared_equals_b",
            Identity::ExponentialCoefficient => "exponential_coefficient",
            Identity::VConsistency => "v_consistency",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Diagnostic {
    pub identity: Identity,
    pub residual: Option<ExpPoly>,
}

/// The constant `c` in `f = c exp(a z/2) + f0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Roots {
    /// Both square roots of `b`, `(c, -c)`.
    Exact(Scalar, Scalar),
    /// `b` has no square root among the exact constants; solutions carry the
    /// free constant `c` subject to `c^2 = b`.
    Symbolic { c: Symbol, b: Scalar },
}

#[derive(Clone, PartialEq, Debug)]
pub struct SolutionSet {
    pub tag: SolveTag,
    pub f0: Option<ZPoly>,
    pub roots: Option<Roots>,
    /// `c exp(a z/2) + f0` followed by `-c exp(a z/2) + f0`.
    pub solutions: Vec<ExpPoly>,
    pub diagnostic: Option<Diagnostic>,
}

impl SolutionSet {
    fn failed(f0: Option<ZPoly>, identity: Identity, residual: Option<ExpPoly>) -> Self {
        SolutionSet {
            tag: SolveTag::NoFiniteOrderSolution,
            f0,
            roots: None,
            solutions: Vec::new(),
            diagnostic: Some(Diagnostic { identity, residual }),
        }
    }
}

/// Name of the free constant used when `b` is not a perfect square.
pub const ROOT_SYMBOL: &str = "c";

/// Solves the instance. `c` fixes the root explicitly; otherwise it is taken
/// from the exact square root of `b`, or left symbolic when there is none.
pub fn solve_theorem31(inst: &T31Instance, c: Option<&Scalar>) -> Result<SolutionSet> {
    let f0 = inst.f0()?;
    if f0.is_zero() {
        return Ok(SolutionSet::failed(None, Identity::F0Nonzero, None));
    }
    let defect = inst.consistency(&f0)?;
    if !defect.is_zero() {
        return Ok(SolutionSet::failed(Some(f0), Identity::VConsistency, Some(ExpPoly::poly(defect))));
    }

    let roots = match c {
        Some(c) => {
            let d = c.mul(c).sub(&inst.b);
            if !d.is_zero() {
                return Ok(SolutionSet::failed(Some(f0), Identity::CSquaredEqualsB, Some(ExpPoly::constant(d))));
            }
            Roots::Exact(c.clone(), c.neg())
        }
        None => match inst.b.sqrt() {
            Ok((p, m)) => Roots::Exact(p, m),
            Err(Error::NotAPerfectSquare { .. }) => {
                Roots::Symbolic { c: Symbol::param(ROOT_SYMBOL), b: inst.b.clone() }
            }
            Err(e) => return Err(e),
        },
    };
    let (cp, cm, slack) = match &roots {
        Roots::Exact(p, m) => (p.clone(), m.clone(), Scalar::zero()),
        Roots::Symbolic { c, b } => {
            let c = Scalar::from_poly(crate::scalars::MPoly::var(c.clone()));
            let slack = c.mul(&c).sub(b);
            (c.clone(), c.neg(), slack)
        }
    };

    let half_wave = ExpPoly::exp_linear(inst.a.mul(&Scalar::rat(1, 2)));
    let f0e = ExpPoly::poly(f0.clone());
    let eq = inst.equation();
    // exact roots leave residual 0; a symbolic c leaves (c^2 - b) exp(a z)
    let allowed = ExpPoly::exp_linear(inst.a.clone()).scale(&slack);
    let mut solutions = Vec::with_capacity(2);
    for root in [cp, cm] {
        let f = half_wave.scale(&root).add(&f0e);
        let r = eq.residual(&f)?.sub(&allowed);
        if !r.is_zero() {
            return Ok(SolutionSet::failed(Some(f0), Identity::ExponentialCoefficient, Some(r)));
        }
        solutions.push(f);
    }
    Ok(SolutionSet { tag: SolveTag::TwoSolutions, f0: Some(f0), roots: Some(roots), solutions, diagnostic: None })
}

#[derive(Clone, PartialEq, Debug)]
pub struct Synthesis {
    pub instance: T31Instance,
    pub v: ZPoly,
    pub f0: ZPoly,
    pub solutions: SolutionSet,
}

/// Chooses `v` so that `g, h, u, a, b, eta` define a solvable instance:
/// `v = -(f0^2 + g f0(z+eta) + h f0' + u f0)`.
pub fn synthesize_v(g: &ZPoly, h: &ZPoly, u: &ZPoly, a: &Scalar, b: &Scalar, eta: &ExpArg) -> Result<Synthesis> {
    let f0 = f0_of(g, h, u, a, eta)?;
    if f0.is_zero() {
        return Err(Error::DegenerateL);
    }
    let v = homogeneous_consistency(g, h, u, eta, &f0)?.neg();
    let instance = T31Instance::new(g.clone(), h.clone(), u.clone(), v.clone(), a.clone(), b.clone(), eta.clone())?;
    let solutions = solve_theorem31(&instance, None)?;
    Ok(Synthesis { instance, v, f0, solutions })
}
