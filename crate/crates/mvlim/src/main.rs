fn main() {
    std::process::exit(mvlim::cli::main_entry());
}
