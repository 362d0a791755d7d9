fn main() {
    std::process::exit(pretzel_braids::cli::run(std::env::args_os()));
}
