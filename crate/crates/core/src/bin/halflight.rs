fn main() {
    std::process::exit(halflight::cli::main_with_args(std::env::args_os()));
}
