fn main() {
    std::process::exit(evanesim::cli::main_from_args(std::env::args()));
}
