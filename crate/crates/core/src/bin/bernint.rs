fn main() {
    std::process::exit(bernint::cli::run(std::env::args_os()));
}
