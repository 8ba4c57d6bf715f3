fn main() -> std::process::ExitCode {
    boxehvi::cli::main()
}
