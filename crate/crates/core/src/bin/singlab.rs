fn main() -> std::process::ExitCode {
    singlab::cli::main_entry()
}
