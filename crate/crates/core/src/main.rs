fn main() {
    std::process::exit(viscoex::cli::run(std::env::args_os()));
}
