//! Acceptance gate. Runs as a plain binary so every criterion prints its own
//! pass/fail line whether or not it succeeds.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use ddeq::cli::{execute, parse_eqfile};
use ddeq::equation::{Equation, VerdictTag};
use ddeq::exppoly::{ExpPoly, ZPoly};
use ddeq::growth::{eval_numeric, geometric_radii, lambda_estimate, zero_count, Complex, EstimatePath, NumericContext};
use ddeq::scalars::{ExpArg, Scalar};
use ddeq::solver::{
    solve_linear_ode_poly, solve_theorem31, synthesize_v, Identity, OdeInstance, Roots, SolveTag, T31Instance,
};

use common::*;

type Check = std::result::Result<(), String>;
type Criterion = (u32, &'static str, Duration, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn load(name: &str) -> std::result::Result<Equation, String> {
    ok(parse_eqfile(&fixture(name))).map(|f| f.equation)
}

fn ep(s: &str) -> ExpPoly {
    let session = ddeq::cli::Session::new();
    session.exppoly(&ddeq::cli::parse(s).unwrap()).unwrap()
}

fn exp_eta(k: i64) -> Scalar {
    Scalar::exp(&eta().mul(&Scalar::from_int(k)).to_exparg().unwrap()).unwrap()
}

/// `g, h, u, v` of the shifted fixture, with `eta` left symbolic.
fn shifted_instance() -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let em = exp_eta(-1);
    let g = ZPoly::monomial(em.mul(&Scalar::from_int(2)), 1);
    let h = ZPoly::constant(em.clone());
    let u = ZPoly::constant(em.neg());
    let v = ZPoly::new(vec![
        em.clone(),
        eta().mul(&Scalar::from_int(2)).sub(&Scalar::one()).mul(&em),
        Scalar::from_int(2).sub(&exp_eta(1)).mul(&em),
    ]);
    (g, h, u, v)
}

fn verified_pairs() -> std::result::Result<Vec<(Equation, ExpPoly)>, String> {
    let mut out = Vec::new();
    for (file, sols) in [
        ("quadratic_q.eq", ["z*exp(z) - z", "-z*exp(z) - z"]),
        ("example31.eq", ["exp(z) - z", "-exp(z) - z"]),
        ("example31_eta1.eq", ["exp(z) - z", "-exp(z) - z"]),
        ("annihilated.eq", ["z*exp(z)", "-z*exp(z)"]),
    ] {
        let eq = load(file)?;
        for s in sols {
            out.push((eq.clone(), ep(s)));
        }
    }
    Ok(out)
}

fn criterion1() -> Check {
    for (eq, f) in verified_pairs()? {
        let r = ok(eq.residual(&f))?;
        ensure!(r.is_zero(), "residual of {f} is {r}");
    }
    let annihilated = load("annihilated.eq")?;
    for f in ["z*exp(z)", "-z*exp(z)"] {
        ensure!(ok(annihilated.op.applied_is_zero(&ep(f)))?, "L({f}) should vanish");
    }
    ensure!(!annihilated.op.is_zero(), "the operator itself is not zero");
    Ok(())
}

fn criterion2() -> Check {
    let (g, h, u, v) = shifted_instance();
    let two = Scalar::from_int(2);
    let inst = ok(T31Instance::new(g.clone(), h.clone(), u.clone(), v.clone(), two.clone(), Scalar::one(), eta_arg()))?;
    let set = ok(solve_theorem31(&inst, None))?;
    ensure!(set.tag == SolveTag::TwoSolutions, "tag {:?}", set.tag);
    ensure!(set.f0 == Some(ZPoly::z().neg()), "f0 = {:?}", set.f0);
    ensure!(set.solutions == vec![ep("exp(z) - z"), ep("-exp(z) - z")], "solutions {:?}", set.solutions);

    let bumped = v.add(&ZPoly::one());
    let inst = ok(T31Instance::new(g, h, u, bumped, two, Scalar::one(), eta_arg()))?;
    let set = ok(solve_theorem31(&inst, None))?;
    ensure!(set.tag == SolveTag::NoFiniteOrderSolution, "tag {:?}", set.tag);
    let d = set.diagnostic.ok_or("no diagnostic")?;
    ensure!(d.identity == Identity::VConsistency, "identity {:?}", d.identity);
    Ok(())
}

fn random_a(r: &mut impl Rng) -> Scalar {
    let choices =
        [Scalar::one(), Scalar::from_int(-1), Scalar::from_int(2), Scalar::rat(1, 2), Scalar::from_int(3), Scalar::i()];
    choices[r.gen_range(0..choices.len())].clone()
}

fn random_eta(r: &mut impl Rng) -> ExpArg {
    loop {
        let s = shift(r);
        if !s.is_zero() {
            return s;
        }
    }
}

fn criterion3() -> Check {
    let (g, h, u, v) = shifted_instance();
    let syn = ok(synthesize_v(&g, &h, &u, &Scalar::from_int(2), &Scalar::one(), &eta_arg()))?;
    ensure!(syn.v == v, "v = {}", syn.v);

    let mut r = rng(3);
    let mut done = 0;
    while done < 200 {
        let (g, h, u) = (zpoly(&mut r, 3), zpoly(&mut r, 3), zpoly(&mut r, 3));
        let (a, eta) = (random_a(&mut r), random_eta(&mut r));
        let w = small_rat(&mut r).add(&if r.gen_bool(0.3) { Scalar::i() } else { Scalar::zero() });
        let b = w.mul(&w);
        let syn = match synthesize_v(&g, &h, &u, &a, &b, &eta) {
            Ok(s) => s,
            Err(ddeq::Error::DegenerateL) => continue,
            Err(e) => return Err(format!("synthesize: {e}")),
        };
        let mut set = ok(solve_theorem31(&syn.instance, None))?;
        if matches!(set.roots, Some(Roots::Symbolic { .. })) {
            set = ok(solve_theorem31(&syn.instance, Some(&w)))?;
        }
        ensure!(set.tag == SolveTag::TwoSolutions, "case {done}: {:?}", set.diagnostic);
        let eq = syn.instance.equation();
        for f in &set.solutions {
            let res = ok(eq.residual(f))?;
            ensure!(res.is_zero(), "case {done}: residual {res} for {f}");
        }
        done += 1;
    }
    Ok(())
}

fn criterion4() -> Check {
    let mut r = rng(4);
    for case in 0..500 {
        let a = scalar(&mut r);
        let h = loop {
            let h = zpoly(&mut r, 8);
            if !h.is_zero() {
                break h;
            }
        };
        let f0 = ok(solve_linear_ode_poly(&OdeInstance { a: a.clone(), h: h.clone() }))?;
        let oracle = ode_oracle(&a, &h).ok_or("singular oracle system")?;
        ensure!(f0 == oracle, "case {case}: recursion {f0} vs oracle {oracle}");
        let lhs = f0.derivative().scale(&Scalar::from_int(2)).sub(&f0.scale(&a));
        ensure!(lhs == h, "case {case}: 2f' - af = {lhs}, H = {h}");
    }
    Ok(())
}

fn criterion5() -> Check {
    for (file, tag) in [
        ("lemma21.eq", VerdictTag::NoEntireSolution),
        ("cubic.eq", VerdictTag::NoTranscendentalFiniteOrder),
        ("quadratic_q.eq", VerdictTag::ConstrainedN2),
    ] {
        let v = load(file)?.classify();
        ensure!(v.tag == tag, "{file}: {:?}", v.tag);
        if tag == VerdictTag::ConstrainedN2 {
            let c = v.constraints.ok_or("missing constraints")?;
            ensure!(c.sigma == 1 && c.lambda_bar == 1, "{c:?}");
        }
    }
    for (eq, f) in verified_pairs()? {
        if eq.n == 2 {
            let order = ok(f.order())?;
            ensure!(order.order as usize == eq.p.degree(), "order of {f} is {}", order.order);
        }
    }
    Ok(())
}

fn criterion6() -> Check {
    let ctx = ok(NumericContext::new(256))?;
    for (f, r, want) in [("z^3", 1.0, 3), ("exp(z) - 1", 7.0, 3), ("z*(exp(z) - 1)", 10.0, 4)] {
        let start = Instant::now();
        let c = ok(zero_count(&ep(f), r, &ctx))?;
        let took = start.elapsed();
        ensure!(c.count == want, "n({r}) for {f} is {}", c.count);
        ensure!(c.deviation < 1e-6, "{f}: quadrature off by {}", c.deviation);
        ensure!(took < Duration::from_secs(10), "{f}: {took:?}");
    }
    Ok(())
}

fn criterion7() -> Check {
    let ctx = ok(NumericContext::new(256))?;
    let radii = geometric_radii(10.0, 2.0, 5);
    let rep = ok(lambda_estimate(&ep("z*(exp(z) - 1)"), &radii, &ctx))?;
    ensure!(rep.path == EstimatePath::Slope, "path {:?}", rep.path);
    ensure!((0.9..=1.1).contains(&rep.lambda_hat), "slope {} (counts {:?})", rep.lambda_hat, rep.counts);
    let rep = ok(lambda_estimate(&ep("z*exp(z)"), &radii, &ctx))?;
    ensure!(rep.path == EstimatePath::TooFewZeros, "path {:?}", rep.path);
    ensure!(rep.lambda_hat == 0.0 && rep.sigma == 1, "lambda {} sigma {}", rep.lambda_hat, rep.sigma);
    Ok(())
}

/// The discrepancy equation evaluated term by term in floating point.
fn brute_residual(sign: f64, z: Complex64) -> Complex64 {
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let f = |w: Complex64| sign * w * w.exp() + w;
    f(z) * f(z) + z * z / two_pi_i * f(z + two_pi_i) + (-z * z / two_pi_i - 2.0 * z) * f(z) - (2.0 * z).exp()
}

fn criterion8() -> Check {
    let path = format!("{}/fixtures/example21.eq", env!("CARGO_MANIFEST_DIR"));
    let eq = load("example21.eq")?;
    let ctx = ok(NumericContext::new(128))?;
    let mut r = rng(8);
    for (sign, f) in [(1.0, "z*exp(z)+z"), (-1.0, "-z*exp(z)+z")] {
        let out = execute(["ddeq", "--json", "verify", path.as_str(), "--f", f]);
        ensure!(out.code == 2, "exit {} for {f}", out.code);
        let json: serde_json::Value = ok(serde_json::from_str(&out.stdout))?;
        ensure!(json["status"] == "NotASolution", "{}", out.stdout);

        let v = ok(eq.verify(&ep(f)))?;
        ensure!(v.tag == VerdictTag::NotASolution, "tag {:?}", v.tag);
        let w = v.witness.ok_or("no residual")?;
        ensure!(!w.is_zero(), "zero residual");
        for _ in 0..5 {
            let z = Complex64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
            let exact = ok(eval_numeric(&w, &Complex::from_f64(z.re, z.im, 128), &ctx))?;
            let exact = Complex64::new(exact.re_f64(), exact.im_f64());
            let brute = brute_residual(sign, z);
            ensure!(exact.norm() > 1e-8, "residual vanishes at {z}");
            ensure!((exact - brute).norm() <= 1e-9 * (1.0 + brute.norm()), "at {z}: {exact} vs brute force {brute}");
        }
    }
    Ok(())
}

fn criterion9() -> Check {
    let mut r = rng(9);
    for case in 0..200 {
        let (f, g, h) = (exppoly(&mut r, 3, 2), exppoly(&mut r, 3, 2), exppoly(&mut r, 2, 2));
        ensure!(f.mul(&g).mul(&h) == f.mul(&g.mul(&h)), "associativity, case {case}");
        ensure!(f.mul(&g) == g.mul(&f) && f.add(&g) == g.add(&f), "commutativity, case {case}");
        ensure!(f.mul(&g.add(&h)) == f.mul(&g).add(&f.mul(&h)), "distributivity, case {case}");
        ensure!(f.sub(&f).is_zero() && f.mul(&ExpPoly::one()) == f, "identities, case {case}");
    }
    for case in 0..200 {
        let (f, s) = (exppoly(&mut r, 3, 3), shift(&mut r));
        ensure!(ok(f.shift(&s))?.derivative() == ok(f.derivative().shift(&s))?, "shift/derivative, case {case}");
    }
    for case in 0..200 {
        let (f, g) = (exppoly(&mut r, 3, 3), exppoly(&mut r, 3, 3));
        let lhs = f.mul(&g).derivative();
        ensure!(lhs == f.derivative().mul(&g).add(&f.mul(&g.derivative())), "Leibniz, case {case}");
    }
    for case in 0..200 {
        let (op, f) = (linop(&mut r), exppoly(&mut r, 2, 2));
        ensure!(ok(op.derivative().apply(&f))? == ok(op.apply(&f))?.derivative(), "operator derivative, case {case}");
    }
    let fixtures = verified_pairs()?;
    let mut case = 0;
    while case < 200 {
        let (eq, f) = if case < fixtures.len() {
            fixtures[case].clone()
        } else {
            let (g, h, u) = (zpoly(&mut r, 2), zpoly(&mut r, 2), zpoly(&mut r, 2));
            let w = small_rat(&mut r);
            let syn = match synthesize_v(&g, &h, &u, &random_a(&mut r), &w.mul(&w), &random_eta(&mut r)) {
                Ok(s) => s,
                Err(ddeq::Error::DegenerateL) => continue,
                Err(e) => return Err(e.to_string()),
            };
            let sols = syn.solutions.solutions;
            ensure!(sols.len() == 2, "synthesized instance without solutions");
            (syn.instance.equation(), sols[case % 2].clone())
        };
        ensure!(ok(eq.residual(&f))?.is_zero(), "case {case} is not a solution");
        let pq = ok(eq.build_pq())?;
        let defect = ok(pq.defect(eq.n, &f))?;
        ensure!(defect.is_zero(), "f^(n-1) P(f) - Q(f) = {defect} for {f}");
        case += 1;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "exact verification of the worked solutions", Duration::from_secs(1), criterion1),
        (2, "closed-form solver and the v-consistency failure", Duration::from_secs(1), criterion2),
        (3, "v synthesis reproduces v and 200 random round trips", Duration::from_secs(30), criterion3),
        (4, "ODE recursion matches the linear-system oracle (500 cases)", Duration::from_secs(30), criterion4),
        (5, "classifier verdicts and order of verified solutions", Duration::from_secs(60), criterion5),
        (6, "argument-principle zero counts at 256 bits", Duration::from_secs(30), criterion6),
        (7, "zero-exponent slope and the bounded-count path", Duration::from_secs(60), criterion7),
        (8, "discrepancy fixture residuals against brute force", Duration::from_secs(60), criterion8),
        (9, "property suites (1000 cases)", Duration::from_secs(600), criterion9),
    ];
    let mut failed = 0;
    for (n, what, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let took = start.elapsed();
        let result =
            result.and_then(|()| if took <= limit { Ok(()) } else { Err(format!("took {took:.2?}, limit {limit:?}")) });
        match result {
            Ok(()) => println!("[PASS] criterion {n}: {what} ({took:.2?})"),
            Err(e) => {
                failed += 1;
                println!("[FAIL] criterion {n}: {what} ({took:.2?}): {e}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}
