fn main() -> std::process::ExitCode {
    egse::cli::main()
}
