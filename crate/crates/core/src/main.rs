fn main() {
    std::process::exit(cellkit::cli::run(std::env::args_os()));
}
