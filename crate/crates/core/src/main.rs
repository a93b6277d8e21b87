use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (outcome, to_stderr) = rdsimplex::cli::run_from_args(std::env::args_os());
    let written = if to_stderr {
        std::io::stderr().write_all(outcome.output.as_bytes())
    } else {
        std::io::stdout().write_all(outcome.output.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit_code as u8)
}
