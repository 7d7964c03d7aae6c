fn main() {
    std::process::exit(wasym::cli::main_entry());
}
