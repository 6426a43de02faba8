//! Polynomial solutions of 2 f' - a f = H.

use ddeq::exppoly::ZPoly;
use ddeq::scalars::Scalar;
use ddeq::solver::{solve_linear_ode_poly, OdeInstance};

fn main() -> ddeq::Result<()> {
    for (a, h) in [
        (Scalar::from_int(2), ZPoly::from_ints(&[0, 0, 1])),
        (Scalar::i(), ZPoly::from_ints(&[1, -1, 0, 2])),
        (Scalar::param("eta"), ZPoly::from_ints(&[0, 1])),
    ] {
        let f = solve_linear_ode_poly(&OdeInstance { a: a.clone(), h: h.clone() })?;
        let check = f.derivative().scale(&Scalar::from_int(2)).sub(&f.scale(&a));
        println!("a = {a}, H = {h}: f = {f}  (2f' - af = {check})");
    }
    Ok(())
}
