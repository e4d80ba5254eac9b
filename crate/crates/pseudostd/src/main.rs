fn main() {
    std::process::exit(pseudostd::cli::run(std::env::args_os()));
}
