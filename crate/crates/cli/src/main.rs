use std::io::Write;

use clap::Parser;
use tha_forge::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if let Some(msg) = outcome.doc.get("error").and_then(|e| e.get("message")).and_then(|m| m.as_str()) {
        eprintln!("tha-forge: {msg}");
    }
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(render(&outcome.doc, cli.pretty).as_bytes()).is_err() {
        std::process::exit(tha_forge::EXIT_IO);
    }
    std::process::exit(outcome.code);
}
