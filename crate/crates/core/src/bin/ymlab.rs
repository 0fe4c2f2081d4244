fn main() {
    std::process::exit(ymlab::runner::cli_main());
}
