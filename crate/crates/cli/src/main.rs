use std::process::ExitCode;

use clap::Parser;

use c4free::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("c4free: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
