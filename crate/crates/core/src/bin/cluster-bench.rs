fn main() -> std::process::ExitCode {
    fpakm::bench::cli::run_cli(std::env::args_os())
}
