fn main() {
    std::process::exit(unitary_averaging::cli::run(std::env::args_os()));
}
