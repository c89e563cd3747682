fn main() {
    std::process::exit(jacklab_cli::run(std::env::args_os()));
}
