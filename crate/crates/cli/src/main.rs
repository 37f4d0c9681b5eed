fn main() {
    std::process::exit(hypcongest_cli::run(std::env::args_os()));
}
