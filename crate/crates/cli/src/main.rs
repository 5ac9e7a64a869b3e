fn main() {
    std::process::exit(qdeficit_cli::run(std::env::args_os()));
}
