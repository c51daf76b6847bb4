fn main() -> std::process::ExitCode {
    torus_ps::cli::main_from(std::env::args_os())
}
