//! Closed-form solutions of f^2 + g f(z+eta) + h f' + u f + v = b exp(a z).

use ddeq::exppoly::ZPoly;
use ddeq::scalars::{ExpArg, MPoly, Scalar, Symbol};
use ddeq::solver::{solve_theorem31, Roots, T31Instance};

fn main() -> ddeq::Result<()> {
    let eta = Scalar::param("eta");
    let em = Scalar::exp(&ExpArg(MPoly::var(Symbol::param("eta")).neg()))?;
    let g = ZPoly::monomial(em.mul(&Scalar::from_int(2)), 1);
    let h = ZPoly::constant(em.clone());
    let u = ZPoly::constant(em.neg());
    let v = ZPoly::new(vec![
        em.clone(),
        eta.mul(&Scalar::from_int(2)).sub(&Scalar::one()).mul(&em),
        Scalar::from_int(2).sub(&eta.exp_of()?).mul(&em),
    ]);
    let inst = T31Instance::new(g, h, u, v.clone(), Scalar::from_int(2), Scalar::one(), eta.to_exparg()?)?;
    let set = solve_theorem31(&inst, None)?;
    println!("{}: f0 = {}", set.tag.name(), set.f0.as_ref().unwrap());
    for f in &set.solutions {
        println!("  f = {f}");
    }

    let off = T31Instance { v: v.add(&ZPoly::one()), ..inst.clone() };
    let set = solve_theorem31(&off, None)?;
    let d = set.diagnostic.unwrap();
    println!("v + 1: {} ({} residual {})", set.tag.name(), d.identity.name(), d.residual.unwrap());

    let b3 = T31Instance { b: Scalar::from_int(3), ..inst };
    let set = solve_theorem31(&b3, None)?;
    if let Some(Roots::Symbolic { c, b }) = set.roots {
        println!("b = 3: f = {}, {}  with {c}^2 = {b}", set.solutions[0], set.solutions[1]);
    }
    Ok(())
}
