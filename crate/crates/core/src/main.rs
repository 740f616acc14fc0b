fn main() { std::process::exit(clifford_polytope::cli::run(std::env::args_os())) }
