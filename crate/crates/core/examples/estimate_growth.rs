use ddeq::cli::{parse, Session};
use ddeq::growth::{geometric_radii, lambda_estimate, NumericContext};

fn main() -> ddeq::Result<()> {
    let ctx = NumericContext::new(256)?;
    // zeros of exp(z^2) - 1 sit on circles of radius sqrt(2 pi k); stay midway between them
    let between: Vec<f64> =
        [2.0f64, 8.0, 32.0, 128.0, 256.0].iter().map(|k| (2.0 * std::f64::consts::PI * (k + 0.5)).sqrt()).collect();
    for (f, radii) in [
        ("z*(exp(z) - 1)", geometric_radii(10.0, 2.0, 5)),
        ("exp(z^2) - 1", between),
        ("z*exp(z)", geometric_radii(10.0, 2.0, 5)),
    ] {
        let e = Session::new().exppoly(&parse(f)?)?;
        let rep = lambda_estimate(&e, &radii, &ctx)?;
        println!("{f}: counts {:?}", rep.counts);
        println!("  {:?}: {} = {:.3}, sigma = {}", rep.path, rep.label, rep.lambda_hat, rep.sigma);
    }
    Ok(())
}
