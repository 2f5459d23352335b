fn main() {
    std::process::exit(nlwt::cli::run(std::env::args_os()));
}
