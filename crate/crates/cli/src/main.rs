fn main() {
    std::process::exit(vacuumprobe_cli::main_with_args(std::env::args_os()));
}
