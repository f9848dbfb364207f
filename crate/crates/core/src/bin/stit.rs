fn main() {
    std::process::exit(stit::cli::run(std::env::args_os()));
}
