fn main() {
    std::process::exit(nilgraph::cli::main_exit());
}
