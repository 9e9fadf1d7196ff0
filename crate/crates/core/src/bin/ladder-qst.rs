fn main() {
    std::process::exit(ladder_qst::cli::run(std::env::args_os()));
}
