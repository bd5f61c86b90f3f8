fn main() {
    std::process::exit(coopmac::cli::run(std::env::args_os()));
}
