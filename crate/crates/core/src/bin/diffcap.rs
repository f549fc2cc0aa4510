fn main() {
    std::process::exit(diffcap::cli::run(std::env::args_os()));
}
