fn main() {
    std::process::exit(mumkit::cli::run(std::env::args_os()));
}
