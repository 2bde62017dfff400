fn main() {
    std::process::exit(reslat::cli::run(std::env::args_os()));
}
