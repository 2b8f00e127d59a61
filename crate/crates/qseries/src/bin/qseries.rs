fn main() {
    std::process::exit(qseries::cli::run(std::env::args_os()));
}
