use ddeq::cli::parse_eqfile;

fn main() -> ddeq::Result<()> {
    for file in ["lemma21.eq", "cubic.eq", "quadratic_q.eq", "example31.eq"] {
        let path = format!("{}/fixtures/{file}", env!("CARGO_MANIFEST_DIR"));
        let eq = parse_eqfile(&std::fs::read_to_string(path).map_err(|e| ddeq::Error::Io(e.to_string()))?)?.equation;
        let v = eq.classify();
        print!("{file:<14} n = {}  {}", eq.n, v.tag.name());
        if let Some(c) = v.constraints {
            print!("  (sigma = lambda_bar = {})", c.sigma);
        }
        println!();
    }
    Ok(())
}
