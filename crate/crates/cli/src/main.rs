mod args;
mod commands;
mod output;
mod suite;
mod svg;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use output::{Failure, Outcome};

fn report_files(files: Vec<std::path::PathBuf>) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn dispatch(command: &Command) -> Outcome {
    command.args().validate().map_err(Failure::Usage)?;
    match command {
        Command::Profile(a) => commands::profile::run(a).map(report_files),
        Command::Heights(a) => commands::heights::run(a),
        Command::Envelope(a) => commands::envelope::run(a).map(report_files),
        Command::Stability(a) => commands::stability::run(a),
        Command::Curvature(a) => commands::curvature::run(a),
        Command::Translation(a) => commands::translation::run(a),
        Command::Check(a) => commands::check::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("minhyp {}: {f}", cli.command.name());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
