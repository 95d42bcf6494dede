fn main() {
    std::process::exit(theta_spectrum_cli::run_from_args(std::env::args_os()));
}
