fn main() {
    std::process::exit(minembed::cli::run(std::env::args_os()));
}
