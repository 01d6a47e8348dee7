fn main() {
    std::process::exit(hieroglyph::cli::run(std::env::args_os()));
}
