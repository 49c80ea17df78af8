fn main() {
    std::process::exit(lpimprove::cli::main_from_args(std::env::args_os()));
}
