//! Pick g, h, u and let the solver choose v; then check the result exactly.

use ddeq::exppoly::ZPoly;
use ddeq::scalars::Scalar;
use ddeq::solver::synthesize_v;

fn main() -> ddeq::Result<()> {
    let g = ZPoly::from_ints(&[1, 0, 1]);
    let h = ZPoly::from_ints(&[0, 3]);
    let u = ZPoly::from_ints(&[-2, 1]);
    let (a, b) = (Scalar::from_int(-1), Scalar::rat(9, 4));
    let eta = Scalar::pi().mul(&Scalar::i()).mul(&Scalar::from_int(2)).to_exparg()?;
    let syn = synthesize_v(&g, &h, &u, &a, &b, &eta)?;
    println!("f0 = {}", syn.f0);
    println!("v  = {}", syn.v);
    let eq = syn.instance.equation();
    println!("{}", ddeq::cli::print::equation_text(&eq));
    for f in &syn.solutions.solutions {
        println!("  f = {f}: residual {}", eq.residual(f)?);
    }
    Ok(())
}
