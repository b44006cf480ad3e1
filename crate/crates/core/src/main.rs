fn main() -> std::process::ExitCode {
    ptolemaic::cli::main()
}
