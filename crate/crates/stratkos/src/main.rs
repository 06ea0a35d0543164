fn main() {
    std::process::exit(stratkos::cli::run(std::env::args().collect()));
}
