fn main() {
    std::process::exit(fptbridge::cli::main_with_args(std::env::args_os()));
}
