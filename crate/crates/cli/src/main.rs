fn main() {
    std::process::exit(meanforge::run_cli(std::env::args_os()));
}
