fn main() {
    std::process::exit(confmod::cli::main_with_env());
}
