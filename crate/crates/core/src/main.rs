fn main() -> std::process::ExitCode {
    erdos_rogers::harness::cli::main_exit()
}
