use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hopfcyc::cli::run(std::env::args()) as u8)
}
