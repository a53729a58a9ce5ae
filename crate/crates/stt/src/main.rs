fn main() {
    std::process::exit(stt::cli::main());
}
