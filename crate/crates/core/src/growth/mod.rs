//! Numeric evaluation of exponential polynomials, zero counting on circles by
//! the argument principle, and estimation of the zero exponent of convergence.

mod complex;

use std::collections::BTreeMap;

use astro_float::{BigFloat, Consts, RoundingMode};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exppoly::{ExpPoly, ZPoly};
use crate::scalars::{GaussRat, MPoly, RatFunc, Scalar, Symbol};

pub use complex::{rat_to_float, to_f64, Complex};

const RM: RoundingMode = RoundingMode::ToEven;

/// Initial number of contour samples, doubled until the winding number settles.
pub const INITIAL_SAMPLES: usize = 1 << 10;
pub const MAX_SAMPLES: usize = 1 << 18;
/// Allowed distance of the quadrature value from the nearest integer.
pub const INTEGER_TOLERANCE: f64 = 1e-6;
/// Contours closer than `PROXIMITY * r` to a zero are moved outward.
pub const PROXIMITY: f64 = 1e-6;
pub const MAX_NUDGES: usize = 5;
pub const MIN_RADII: usize = 5;

#[derive(Clone, Debug)]
pub struct NumericContext {
    precision: usize,
    bindings: BTreeMap<String, Complex>,
}

impl NumericContext {
    pub fn new(precision: usize) -> Result<Self> {
        if precision < 64 {
            return Err(Error::InvalidInput { what: format!("precision must be at least 64 bits, got {precision}") });
        }
        Ok(NumericContext { precision, bindings: BTreeMap::new() })
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn bind(&mut self, name: &str, value: Complex) {
        self.bindings.insert(name.to_string(), value);
    }

    pub fn bind_f64(&mut self, name: &str, re: f64, im: f64) {
        let v = Complex::from_f64(re, im, self.precision);
        self.bind(name, v);
    }

    pub fn binding(&self, name: &str) -> Option<&Complex> {
        self.bindings.get(name)
    }
}

impl Default for NumericContext {
    fn default() -> Self {
        NumericContext::new(256).expect("default precision is valid")
    }
}

/// Working state for evaluation at one precision: constants cache and `pi`.
pub struct Evaluator<'a> {
    ctx: &'a NumericContext,
    p: usize,
    cc: Consts,
    pi: BigFloat,
}

impl<'a> Evaluator<'a> {
    pub fn new(ctx: &'a NumericContext) -> Self {
        let p = ctx.precision;
        let mut cc = Consts::new().expect("constants cache");
        let pi = cc.pi(p, RM);
        Evaluator { ctx, p, cc, pi }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn constants(&mut self) -> &mut Consts {
        &mut self.cc
    }

    pub fn pi(&self) -> &BigFloat {
        &self.pi
    }

    fn gauss(&self, c: &GaussRat) -> Complex {
        Complex::new(rat_to_float(&c.re, self.p), rat_to_float(&c.im, self.p))
    }

    fn mpoly(&self, m: &MPoly) -> Result<Complex> {
        let p = self.p;
        let mut missing = None;
        let v = m.fold_eval(
            Complex::zero(p),
            |c| self.gauss(c),
            |s, e| {
                let base = match s {
                    Symbol::Pi => Complex::new(self.pi.clone(), BigFloat::from_u64(0, p)),
                    Symbol::Param(name) => match self.ctx.bindings.get(&**name) {
                        Some(v) => v.clone(),
                        None => {
                            missing = Some(name.to_string());
                            Complex::zero(p)
                        }
                    },
                };
                base.powi(e, p)
            },
            |a, b| a.add(&b, p),
            |a, b| a.mul(&b, p),
        );
        match missing {
            Some(name) => Err(Error::UnboundParameter { name }),
            None => Ok(v),
        }
    }

    fn ratfunc(&self, r: &RatFunc) -> Result<Complex> {
        let num = self.mpoly(r.num())?;
        if r.den().is_one() {
            return Ok(num);
        }
        let den = self.mpoly(r.den())?;
        Ok(num.div(&den, self.p))
    }

    pub fn scalar(&mut self, s: &Scalar) -> Result<Complex> {
        let mut acc = Complex::zero(self.p);
        for (arg, coeff) in s.terms() {
            let mut t = self.ratfunc(coeff)?;
            if !arg.is_zero() {
                let e = self.mpoly(arg.poly())?.exp(self.p, &mut self.cc);
                t = t.mul(&e, self.p);
            }
            acc = acc.add(&t, self.p);
        }
        Ok(acc)
    }

    fn zpoly(&mut self, z: &ZPoly) -> Result<Vec<Complex>> {
        z.coeffs().iter().map(|c| self.scalar(c)).collect()
    }

    /// Converts every exact constant of `f` (and of `f'`) once, for repeated evaluation.
    pub fn compile(&mut self, f: &ExpPoly) -> Result<Compiled> {
        let mut terms = Vec::with_capacity(f.num_terms());
        for (exponent, coeff) in f.terms() {
            // d/dz [c e^q] = (c' + c q') e^q
            let dcoeff = coeff.derivative().add(&coeff.mul(&exponent.derivative()));
            terms.push(CompiledTerm {
                coeff: self.zpoly(coeff)?,
                dcoeff: self.zpoly(&dcoeff)?,
                exponent: self.zpoly(exponent)?,
            });
        }
        Ok(Compiled { terms, p: self.p })
    }

    pub fn eval(&mut self, f: &ExpPoly, z: &Complex) -> Result<Complex> {
        let c = self.compile(f)?;
        Ok(c.eval(z, &mut self.cc).0)
    }
}

struct CompiledTerm {
    coeff: Vec<Complex>,
    dcoeff: Vec<Complex>,
    exponent: Vec<Complex>,
}

/// An exponential polynomial with numeric coefficients, evaluated together
/// with its derivative.
pub struct Compiled {
    terms: Vec<CompiledTerm>,
    p: usize,
}

fn horner(c: &[Complex], z: &Complex, p: usize) -> Complex {
    let mut acc = Complex::zero(p);
    for a in c.iter().rev() {
        acc = acc.mul(z, p).add(a, p);
    }
    acc
}

impl Compiled {
    /// `(f(z), f'(z))`.
    pub fn eval(&self, z: &Complex, cc: &mut Consts) -> (Complex, Complex) {
        let p = self.p;
        let (mut f, mut df) = (Complex::zero(p), Complex::zero(p));
        for t in &self.terms {
            let (mut a, mut b) = (horner(&t.coeff, z, p), horner(&t.dcoeff, z, p));
            if !t.exponent.is_empty() {
                let e = horner(&t.exponent, z, p).exp(p, cc);
                a = a.mul(&e, p);
                b = b.mul(&e, p);
            }
            f = f.add(&a, p);
            df = df.add(&b, p);
        }
        (f, df)
    }
}

/// `f(z)` to the context's working precision.
pub fn eval_numeric(f: &ExpPoly, z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    Evaluator::new(ctx).eval(f, z)
}

pub fn eval_scalar(s: &Scalar, ctx: &NumericContext) -> Result<Complex> {
    Evaluator::new(ctx).scalar(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCount {
    /// The radius asked for.
    pub requested_radius: f64,
    /// The radius actually integrated over, after moving away from nearby zeros.
    pub radius: f64,
    pub count: u64,
    /// Quadrature value `(1/2 pi i) \oint f'/f` before rounding.
    pub raw: (f64, f64),
    /// `|raw - count|`.
    pub deviation: f64,
    pub samples: usize,
}

enum Attempt {
    Done(ZeroCount),
    TooClose,
}

/// Number of zeros of `f` in `|z| <= r`, counted with multiplicity.
pub fn zero_count(f: &ExpPoly, r: f64, ctx: &NumericContext) -> Result<ZeroCount> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidInput { what: format!("radius must be positive, got {r}") });
    }
    let compiled = Evaluator::new(ctx).compile(f)?;
    let delta = PROXIMITY * r;
    let mut radius = r;
    for _ in 0..=MAX_NUDGES {
        match winding(&compiled, radius, delta, ctx)? {
            Attempt::Done(mut c) => {
                c.requested_radius = r;
                return Ok(c);
            }
            Attempt::TooClose => radius += 10.0 * delta,
        }
    }
    Err(Error::ContourTooCloseToZero { radius: r })
}

/// Sum of `z f'(z)/f(z)` over samples `offset, offset + stride, ...` below `n`,
/// and the smallest `|f/f'|` seen.
fn partial_sum(c: &Compiled, r: f64, n: usize, offset: usize, stride: usize, ctx: &NumericContext) -> (Complex, f64) {
    let p = c.p;
    let idx: Vec<usize> = (offset..n).step_by(stride).collect();
    idx.par_chunks(64)
        .map(|chunk| {
            let mut ev = Evaluator::new(ctx);
            let two_pi_over_n =
                ev.pi().mul(&BigFloat::from_f64(2.0, p), p, RM).div(&BigFloat::from_u64(n as u64, p), p, RM);
            let rr = BigFloat::from_f64(r, p);
            let mut acc = Complex::zero(p);
            let mut closest = f64::INFINITY;
            for &k in chunk {
                let theta = two_pi_over_n.mul(&BigFloat::from_u64(k as u64, p), p, RM);
                let z = Complex::polar(&rr, &theta, p, ev.constants());
                let (fz, dfz) = c.eval(&z, ev.constants());
                if fz.is_zero() {
                    closest = 0.0;
                    continue;
                }
                // |f/f'| estimates the distance to the nearest zero
                let dist = if dfz.is_zero() { f64::INFINITY } else { 2f64.powf(fz.log2_abs() - dfz.log2_abs()) };
                closest = closest.min(dist);
                acc = acc.add(&z.mul(&dfz, p).div(&fz, p), p);
            }
            (acc, closest)
        })
        .reduce(|| (Complex::zero(p), f64::INFINITY), |(a, x), (b, y)| (a.add(&b, p), x.min(y)))
}

fn winding(c: &Compiled, r: f64, delta: f64, ctx: &NumericContext) -> Result<Attempt> {
    let p = c.p;
    let mut n = INITIAL_SAMPLES;
    let (mut sum, closest) = partial_sum(c, r, n, 0, 1, ctx);
    if closest < delta {
        return Ok(Attempt::TooClose);
    }
    let mut prev: Option<i64> = None;
    let mut last: f64;
    loop {
        let val = sum.scale(&BigFloat::from_u64(1, p).div(&BigFloat::from_u64(n as u64, p), p, RM), p);
        let (re, im) = (val.re_f64(), val.im_f64());
        last = re;
        let k = re.round();
        let settled = (re - k).abs() < INTEGER_TOLERANCE && im.abs() < INTEGER_TOLERANCE;
        if settled {
            if prev == Some(k as i64) {
                if k < 0.0 {
                    break;
                }
                return Ok(Attempt::Done(ZeroCount {
                    requested_radius: r,
                    radius: r,
                    count: k as u64,
                    raw: (re, im),
                    deviation: (re - k).hypot(im),
                    samples: n,
                }));
            }
            prev = Some(k as i64);
        } else {
            prev = None;
        }
        if n >= MAX_SAMPLES {
            break;
        }
        // the doubled grid reuses every existing sample and adds the midpoints
        let (extra, closest) = partial_sum(c, r, 2 * n, 1, 2, ctx);
        if closest < delta {
            return Ok(Attempt::TooClose);
        }
        sum = sum.add(&extra, p);
        n *= 2;
    }
    Err(Error::NonIntegerWinding { radius: r, value: last })
}

/// `start * ratio^k` for `k = 0..count`.
pub fn geometric_radii(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start * ratio.powi(k as i32)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EstimatePath {
    /// Least-squares slope of `log n(r)` against `log r`.
    Slope,
    /// The counts stay bounded (fewer than two zeros, or no growth across the
    /// radii): the zero set looks finite and the exponent is reported as 0.
    TooFewZeros,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub radii: Vec<f64>,
    pub counts: Vec<u64>,
    pub path: EstimatePath,
    /// Exponent of convergence of the zeros, counted with multiplicity.
    pub lambda_hat: f64,
    /// The fitted slope; absent on the bounded-count path.
    pub slope: Option<f64>,
    /// 95% confidence interval for the slope, when at least three radii are fitted.
    pub confidence: Option<(f64, f64)>,
    /// Radii used in the fit (those with at least two zeros inside).
    pub fitted: usize,
    pub sigma: u32,
    pub hyper_order: u32,
    pub label: &'static str,
}

/// Counts zeros on each radius and fits `n(r) ~ C r^lambda`.
pub fn lambda_estimate(f: &ExpPoly, radii: &[f64], ctx: &NumericContext) -> Result<GrowthReport> {
    if radii.len() < MIN_RADII {
        return Err(Error::TooFewRadii { needed: MIN_RADII, got: radii.len() });
    }
    let order = f.order()?;
    let mut sorted = radii.to_vec();
    sorted.sort_by(f64::total_cmp);
    let counts: Vec<ZeroCount> = sorted.iter().map(|&r| zero_count(f, r, ctx)).collect::<Result<_>>()?;

    let points: Vec<(f64, f64)> =
        counts.iter().filter(|c| c.count >= 2).map(|c| (c.radius.ln(), (c.count as f64).ln())).collect();
    let bounded = points.len() < 2 || counts.first().map(|c| c.count) == counts.last().map(|c| c.count);
    let (path, lambda_hat, confidence) = if bounded {
        (EstimatePath::TooFewZeros, 0.0, None)
    } else {
        let (slope, ci) = fit_slope(&points);
        (EstimatePath::Slope, slope, ci)
    };
    Ok(GrowthReport {
        radii: counts.iter().map(|c| c.radius).collect(),
        counts: counts.iter().map(|c| c.count).collect(),
        path,
        lambda_hat,
        slope: (!bounded).then_some(lambda_hat),
        confidence,
        fitted: if bounded { 0 } else { points.len() },
        sigma: order.order,
        hyper_order: order.hyper_order,
        label: "λ̂ (multiplicity-weighted)",
    })
}

/// Ordinary least squares slope, with a Student-t interval when `m >= 3`.
fn fit_slope(points: &[(f64, f64)]) -> (f64, Option<(f64, f64)>) {
    use statrs::distribution::{ContinuousCDF, StudentsT};

    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    if points.len() < 3 {
        return (slope, None);
    }
    let intercept = my - slope * mx;
    let sse: f64 = points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let se = (sse / (m - 2.0) / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, m - 2.0).expect("positive degrees of freedom").inverse_cdf(0.975);
    (slope, Some((slope - t * se, slope + t * se)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ExpArg;

    fn z() -> ExpPoly {
        ExpPoly::z()
    }
    fn ez() -> ExpPoly {
        ExpPoly::exp_linear(Scalar::one())
    }

    #[test]
    fn evaluates_simple_values() {
        let ctx = NumericContext::default();
        let v = eval_numeric(&z(), &Complex::from_f64(3.0, 4.0, 256), &ctx).unwrap();
        assert_eq!((v.re_f64(), v.im_f64()), (3.0, 4.0));

        let e_ipi = Scalar::exp(&ExpArg(MPoly::var(Symbol::Pi).mul(&MPoly::constant(GaussRat::i()))));
        // the exact layer already folds exp(i pi) to -1; evaluate the unfolded form numerically
        assert_eq!(e_ipi.unwrap(), Scalar::from_int(-1));
        let mut ctx = NumericContext::default();
        ctx.bind_f64("t", 0.0, 1.0);
        let s = Scalar::exp(&ExpArg(MPoly::var(Symbol::Pi).mul(&MPoly::var(Symbol::param("t"))))).unwrap();
        let v = eval_scalar(&s, &ctx).unwrap();
        assert!((v.re_f64() + 1.0).abs() < 1e-70 && v.im_f64().abs() < 1e-70);
    }

    #[test]
    fn unbound_parameter() {
        let s = Scalar::param("eta");
        let err = eval_scalar(&s, &NumericContext::default()).unwrap_err();
        assert_eq!(err, Error::UnboundParameter { name: "eta".into() });
    }

    #[test]
    fn analytic_zero() {
        let ctx = NumericContext::default();
        let f = z().mul(&ez().sub(&ExpPoly::one()));
        let mut ev = Evaluator::new(&ctx);
        let two_pi = ev.pi().mul(&BigFloat::from_f64(2.0, 256), 256, RM);
        let at = Complex::new(BigFloat::from_f64(0.0, 256), two_pi);
        let v = ev.eval(&f, &at).unwrap();
        assert!(v.abs_f64() < 1e-60);
    }

    #[test]
    fn counts_small_cases() {
        let ctx = NumericContext::default();
        assert_eq!(zero_count(&z().pow(3), 1.0, &ctx).unwrap().count, 3);
        assert_eq!(zero_count(&ez().sub(&ExpPoly::one()), 7.0, &ctx).unwrap().count, 3);
        let c = zero_count(&z().mul(&ez().sub(&ExpPoly::one())), 10.0, &ctx).unwrap();
        assert_eq!(c.count, 4);
        assert!(c.deviation < INTEGER_TOLERANCE);
    }

    #[test]
    fn contour_through_a_zero_is_not_counted() {
        // the zero at z = 2 lies on |z| = 2; the moved contour still passes
        // within 1e-5 r of it, too close for the sample cap
        let f = z().sub(&ExpPoly::constant(Scalar::from_int(2)));
        let err = zero_count(&f, 2.0, &NumericContext::new(64).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NonIntegerWinding { .. } | Error::ContourTooCloseToZero { .. }));
        // far enough away the nudge is not needed
        let c = zero_count(&f, 2.5, &NumericContext::new(64).unwrap()).unwrap();
        assert_eq!((c.count, c.radius), (1, 2.5));
    }

    #[test]
    fn finite_zero_sets_report_zero_exponent() {
        let ctx = NumericContext::default();
        let radii = geometric_radii(10.0, 2.0, 5);
        let r = lambda_estimate(&z().pow(3), &radii, &ctx).unwrap();
        assert_eq!(r.path, EstimatePath::TooFewZeros);
        assert_eq!(r.lambda_hat, 0.0);
        let r = lambda_estimate(&z().mul(&ez()), &radii, &ctx).unwrap();
        assert_eq!((r.path, r.sigma), (EstimatePath::TooFewZeros, 1));
        assert_eq!(lambda_estimate(&z(), &radii[..3], &ctx).unwrap_err().code(), "TooFewRadii");
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(f64, f64)> = (1..6).map(|k| (k as f64, 2.0 * k as f64 + 1.0)).collect();
        let (s, ci) = fit_slope(&pts);
        assert!((s - 2.0).abs() < 1e-12);
        let (lo, hi) = ci.unwrap();
        assert!(lo <= s && s <= hi);
    }
}
