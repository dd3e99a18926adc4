mod args;
mod cache;
mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use config::RunConfig;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn run(argv: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .next()
                .unwrap_or("error: invalid arguments");
            eprintln!("{first} (see --help)");
            return EXIT_USAGE;
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Some(n) = config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    match commands::execute(config) {
        Ok(done) => {
            if let Err(e) = done.output.write_to(io::stdout().lock()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: writing output: {e}");
                    return EXIT_USAGE;
                }
            }
            let mut err = io::stderr().lock();
            for note in done.notes {
                let _ = writeln!(err, "{note}");
            }
            if done.failed {
                EXIT_FAILED
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
