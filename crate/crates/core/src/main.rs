fn main() {
    let args: Vec<String> = std::env::args().collect();
    let code = dsineq::cli::run(&args);
    std::process::exit(code);
}
