fn main() {
    let code = uavnet_harness::cli::run(std::env::args_os());
    std::process::exit(code);
}
