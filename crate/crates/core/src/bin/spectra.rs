fn main() {
    std::process::exit(spectra_core::cli::main_with_args(std::env::args_os()));
}
