use std::process::ExitCode;

fn main() -> ExitCode {
    eulerian_kit::cli::main()
}
