fn main() -> std::process::ExitCode {
    atto::cli::main()
}
