fn main() {
    std::process::exit(sausage_core::cli::main_with_args(std::env::args_os()));
}
