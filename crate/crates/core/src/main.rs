fn main() {
    std::process::exit(groupiso::cli::main());
}
