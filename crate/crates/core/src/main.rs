use std::process::ExitCode;

use clap::Parser;
use gtkit::cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("InputError: {}", e);
            return ExitCode::from(2);
        }
    }
    let config = RunConfig::from_cli(&cli);
    match run(&config) {
        Ok(report) => {
            let text = report.to_json();
            match &config.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("InputError: {}: {}", path.display(), e);
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", text),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}: {}", e.name(), e);
            ExitCode::from(2)
        }
    }
}
