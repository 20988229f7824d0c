fn main() {
    std::process::exit(ahp_thermo::cli::run());
}
