fn main() { std::process::exit(modspec::cli::run()) }
