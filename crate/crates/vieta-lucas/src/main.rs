fn main() {
    std::process::exit(vieta_lucas::cli::run(std::env::args_os()));
}
