fn main() {
    std::process::exit(apolar_cli::run_cli(std::env::args()));
}
