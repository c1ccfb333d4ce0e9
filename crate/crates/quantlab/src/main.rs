fn main() {
    std::process::exit(quantlab::run(std::env::args_os()));
}
