//! Drives the command-line front end in-process and inspects its report.

use diffcap::cli::{execute, Cli, Report};
use clap::Parser;

fn main() -> diffcap::Result<()> {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    let args = ["diffcap", "analyze", "--patterns", &format!("{root}/pppm.pat")];
    let exec = execute(&Cli::parse_from(args))?;
    print!("{}", exec.text);
    let json = exec.report.to_json();
    let back = Report::from_json(&json)?;
    println!("exit code {}, round trip ok: {}", back.exit_code, back.to_json() == json);
    Ok(())
}
