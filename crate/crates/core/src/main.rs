fn main() {
    let out = ddeq::cli::execute(std::env::args_os());
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
