fn main() {
    std::process::exit(semiflat_cli::main_with_args(std::env::args_os()));
}
