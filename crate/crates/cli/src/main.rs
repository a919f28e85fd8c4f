use std::process::ExitCode;

use catbase_cli::{render, run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let out = if cli.json {
        render::to_json(&outcome.report)
    } else {
        render::to_text(&outcome.report)
    };
    print!("{out}");
    if let Some(msg) = outcome.report["error"]["message"].as_str() {
        eprintln!("error: {msg}");
    }
    ExitCode::from(outcome.code as u8)
}
