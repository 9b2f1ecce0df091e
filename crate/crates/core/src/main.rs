fn main() {
    std::process::exit(dhyper::cli::main_entry());
}
