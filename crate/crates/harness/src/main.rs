use clap::Parser;
use wjump_harness::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = execute(&cli.command) {
        eprintln!("wjump: {e}");
        std::process::exit(e.exit_code());
    }
}
