use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(syscodes::cli::run(std::env::args_os()))
}
