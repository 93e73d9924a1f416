fn main() {
    std::process::exit(flagcy_cli::run(std::env::args_os()));
}
