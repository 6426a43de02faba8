//! Exact residuals for the shipped equation files.

use ddeq::cli::{parse, parse_eqfile};

fn check(file: &str, candidates: &[&str]) -> ddeq::Result<()> {
    let path = format!("{}/fixtures/{file}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).map_err(|e| ddeq::Error::Io(e.to_string()))?;
    let eq = parse_eqfile(&text)?;
    for c in candidates {
        let f = eq.session.exppoly(&parse(c)?)?;
        let v = eq.equation.verify(&f)?;
        match &v.witness {
            None => println!("{file}: f = {f} verified"),
            Some(w) => println!("{file}: f = {f} fails, residual {w}"),
        }
    }
    Ok(())
}

fn main() -> ddeq::Result<()> {
    check("quadratic_q.eq", &["z*exp(z) - z", "-z*exp(z) - z"])?;
    check("example31.eq", &["exp(z) - z", "-exp(z) - z", "exp(z) + z"])?;
    check("annihilated.eq", &["z*exp(z)", "-z*exp(z)"])?;
    // the claimed solutions of this one leave a z^2*exp(z) term
    check("example21.eq", &["z*exp(z) + z", "-z*exp(z) + z"])?;
    Ok(())
}
