use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use shadowcf_cli::{configure_threads, run, Cli, EXIT_OK};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = configure_threads().and_then(|()| run(&cli, &mut out));
    let flushed = out.flush();
    match result {
        Ok(()) => {
            if let Err(e) = flushed {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("shadowcf: {e}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(EXIT_OK)
        }
        Err(e) => {
            eprintln!("shadowcf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
