use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use densitypack::Limits;
use densitypack_cli::{execute, exit_code, Cli, Status, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match execute(&cli, &limits, &mut out) {
        Ok(Status::Ok) => Status::Ok.code(),
        Ok(Status::Failed) => {
            eprintln!("verification failed; see the report for details");
            Status::Failed.code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
