fn main() {
    std::process::exit(gzcoeff::cli::run(std::env::args_os()));
}
