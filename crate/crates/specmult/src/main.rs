fn main() {
    std::process::exit(specmult::cli::run());
}
