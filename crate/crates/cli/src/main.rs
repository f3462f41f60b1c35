fn main() {
    std::process::exit(qbinsum_cli::run(std::env::args_os()));
}
