fn main() {
    std::process::exit(nusp::cli::main());
}
