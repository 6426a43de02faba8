//! Exact constants: rationals, i, pi, parameters and exponentials of them.

use ddeq::scalars::Scalar;

fn main() -> ddeq::Result<()> {
    let two_pi_i = Scalar::from_int(2).mul(&Scalar::pi()).mul(&Scalar::i());
    println!("exp(2*pi*i) = {}", two_pi_i.exp_of()?);
    println!(
        "exp(pi*i/2) = {}",
        two_pi_i.scale(&ddeq::scalars::GaussRat::from_rat(ddeq::scalars::rat(1, 4))).exp_of()?
    );

    let eta = Scalar::param("eta");
    let e = eta.exp_of()?;
    let x = e.add(&Scalar::one()).pow(2);
    println!("(exp(eta) + 1)^2 = {x}");
    println!("1/(eta^2 - 1) = {}", eta.pow(2).sub(&Scalar::one()).invert()?);

    let (r, _) = Scalar::rat(-9, 4).sqrt()?;
    println!("sqrt(-9/4) = {r}");
    match Scalar::from_int(2).sqrt() {
        Ok(_) => unreachable!(),
        Err(e) => println!("sqrt(2): {e}"),
    }
    match Scalar::pi().mul(&Scalar::i()).scale(&ddeq::scalars::GaussRat::from_rat(ddeq::scalars::rat(1, 3))).exp_of() {
        Ok(_) => unreachable!(),
        Err(e) => println!("exp(pi*i/3): {e}"),
    }
    Ok(())
}
