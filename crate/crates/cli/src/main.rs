fn main() {
    std::process::exit(tiltchow_cli::run_from_args(std::env::args_os()));
}
