fn main() {
    std::process::exit(planespan::cli::run(std::env::args_os()));
}
