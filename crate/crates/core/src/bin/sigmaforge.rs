fn main() {
    std::process::exit(sigmaforge::cli::main());
}
