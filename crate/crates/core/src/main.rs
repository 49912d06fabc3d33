fn main() {
    std::process::exit(bnscope::cli::run(std::env::args_os()));
}
