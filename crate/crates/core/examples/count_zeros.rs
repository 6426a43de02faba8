use ddeq::cli::{parse, Session};
use ddeq::growth::{zero_count, NumericContext};

fn main() -> ddeq::Result<()> {
    let ctx = NumericContext::new(256)?;
    let session = Session::new();
    for (f, r) in [("z^3", 1.0), ("exp(z) - 1", 7.0), ("z*(exp(z) - 1)", 10.0)] {
        let e = session.exppoly(&parse(f)?)?;
        let c = zero_count(&e, r, &ctx)?;
        println!(
            "{f:<16} |z| < {r:<4} {} zeros  (winding {:.3e} from an integer, {} samples)",
            c.count, c.deviation, c.samples
        );
    }
    Ok(())
}
