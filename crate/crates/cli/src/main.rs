use std::process::ExitCode;

use clap::Parser;
use qergodic_cli::{emit, run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args).and_then(|r| emit(&r, args.out.as_ref())) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qergodic: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
