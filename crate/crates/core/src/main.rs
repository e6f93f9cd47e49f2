fn main() {
    std::process::exit(entx::cli::main_with_args(std::env::args_os()));
}
