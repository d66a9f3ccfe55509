fn main() {
    std::process::exit(conedd::cli::main_with_args(std::env::args_os()));
}
