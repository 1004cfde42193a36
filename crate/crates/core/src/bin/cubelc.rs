fn main() {
    std::process::exit(cubelc::cli::main_with_env());
}
