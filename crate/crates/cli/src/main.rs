use std::process::ExitCode;

use laminate_cli::CliError;

fn main() -> ExitCode {
    let stdout = std::io::stdout();
    match laminate_cli::main_with(std::env::args_os().collect(), &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        // clap formats its own usage, help and version output
        Err(CliError::Clap(e)) => e.exit(),
        Err(e) => {
            eprintln!("laminate: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
