fn main() {
    std::process::exit(polysum_cli::run(std::env::args_os()));
}
