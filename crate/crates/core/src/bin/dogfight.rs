fn main() -> std::process::ExitCode {
    dogfight::cli::main_entry()
}
