fn main() {
    std::process::exit(greencorr::cli::run(std::env::args_os()));
}
