use clap::Parser;
use hecke_cli::{exit_code, run, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    let status = match run(&cfg) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    };
    std::process::exit(status);
}
