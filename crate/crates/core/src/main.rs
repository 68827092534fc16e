fn main() {
    std::process::exit(planefold::cli::run(std::env::args_os()));
}
