fn main() {
    std::process::exit(scfg_linear::cli::main_with_args(std::env::args_os()));
}
