use std::io::Write;

use clap::Parser;
use tgw_cli::args::Cli;
use tgw_cli::run::{render, run};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let outcome = run(&cli.command);
    let (code, text) = render(&outcome);
    if let Err(f) = &outcome {
        eprintln!("tgw {}: {}", f.command, f.error);
    }
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
    std::process::exit(code);
}
