fn main() {
    std::process::exit(finfourier_cli::run(std::env::args_os()));
}
