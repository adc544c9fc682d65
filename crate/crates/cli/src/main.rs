fn main() {
    std::process::exit(fihr_cli::run_cli(std::env::args_os()));
}
