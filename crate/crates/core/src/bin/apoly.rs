fn main() {
    std::process::exit(apoly::cli::main_with_args(std::env::args_os()));
}
