use std::process::ExitCode;

fn main() -> ExitCode {
    disbessel::cli::run()
}
