fn main() {
    std::process::exit(lrgb::cli::run(std::env::args_os()));
}
