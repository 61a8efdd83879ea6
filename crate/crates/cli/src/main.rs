fn main() {
    std::process::exit(diamlab_cli::main_with_args(std::env::args_os()));
}
