fn main() {
    std::process::exit(spanning_spheres::cli::main_with_args(std::env::args_os()));
}
