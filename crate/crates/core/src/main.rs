fn main() {
    std::process::exit(bkernel::cli::main_with_args(std::env::args_os()));
}
