fn main() {
    std::process::exit(rank6::cli::main_with_args(std::env::args_os()));
}
