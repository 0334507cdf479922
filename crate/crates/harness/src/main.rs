fn main() {
    std::process::exit(specmeans_harness::cli::run(std::env::args_os()));
}
