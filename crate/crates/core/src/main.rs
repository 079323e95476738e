fn main() -> std::process::ExitCode {
    resonance::cli::main()
}
