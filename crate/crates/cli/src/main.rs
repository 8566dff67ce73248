fn main() {
    std::process::exit(bsx_cli::run());
}
