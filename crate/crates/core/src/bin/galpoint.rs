fn main() {
    std::process::exit(galpoint::cli::run(std::env::args_os()));
}
