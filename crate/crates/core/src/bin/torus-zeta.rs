fn main() {
    std::process::exit(torus_zeta::cli::run());
}
