fn main() -> std::process::ExitCode {
    qdeform::cli::main()
}
