fn main() {
    std::process::exit(inscribe::cli::run_cli(std::env::args_os()));
}
