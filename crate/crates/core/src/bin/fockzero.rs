fn main() {
    std::process::exit(fockzero::cli::run(std::env::args_os()));
}
