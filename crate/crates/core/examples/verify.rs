fn main() {
    let report = iet_cantor::cli::verify_suite();
    print!("{}", report.lines());
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
