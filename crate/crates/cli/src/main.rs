fn main() {
    std::process::exit(stgrf_cli::main_with_args(std::env::args_os()));
}
