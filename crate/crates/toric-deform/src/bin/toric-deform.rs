use std::process::ExitCode;

use clap::Parser;
use toric_deform::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli.command);
    let text = report.render(cli.format);
    if report.code != 0 && report.json.get("error").is_some() {
        eprint!("{text}");
    } else if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{text}");
    }
    ExitCode::from(report.code as u8)
}
