fn main() {
    std::process::exit(lietype_cli::run(std::env::args_os()));
}
