use std::process::ExitCode;

use clap::Parser;
use gaugesets_cli::{run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::debug!("exit code {}", e.code);
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
