fn main() {
    std::process::exit(qonsager_cli::run());
}
