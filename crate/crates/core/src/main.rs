fn main() {
    std::process::exit(lgmk::cli::run());
}
