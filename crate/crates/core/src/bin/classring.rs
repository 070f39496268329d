fn main() {
    std::process::exit(classring::cli::main_with_args(std::env::args_os()));
}
