use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use segre_towers::{degree_cap_from_env, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = degree_cap_from_env().and_then(|cap| run(&cli, cap, &mut stdout));
    let _ = stdout.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
