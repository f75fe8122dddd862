fn main() {
    std::process::exit(gabor_bounds::cli::run());
}
