fn main() {
    std::process::exit(ndpm::cli::main());
}
