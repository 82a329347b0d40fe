use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(trivext_cli::run(std::env::args_os()))
}
