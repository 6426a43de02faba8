//! The expression grammar and the equation file format.

use ddeq::cli::{parse, parse_eqfile, print_eqfile, Session};

fn main() -> ddeq::Result<()> {
    let mut s = Session::new();
    s.declare("eta")?;
    for text in ["(z + 1)^3", "e^(2*z)*z - exp(z)^2", "exp(pi*i)*z^2/2", "exp(eta)/eta"] {
        println!("{text:<24} -> {}", s.exppoly(&parse(text)?)?);
    }
    for bad in ["e*z", "z^(1/2)", "z^(-1)", "f(z) +"] {
        println!(
            "{bad:<24} -> {}",
            parse(bad).and_then(|a| s.exppoly(&a)).map(|e| e.to_string()).unwrap_or_else(|e| e.to_string())
        );
    }

    let file = "params = eta\nbindings eta = 1\nequation = f^2 + z*f(z + eta) - f' = exp(2*z)\n";
    let eq = parse_eqfile(file)?;
    print!("{}", print_eqfile(&eq));
    Ok(())
}
