#![allow(dead_code)]

use std::path::PathBuf;

use unitary_averaging::cli::{execute, Cli};

pub fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

/// Parses `args` (without the program name) and returns the primary document.
pub fn run_cli(args: &[&str]) -> (String, i32) {
    use clap::Parser;
    let cli = Cli::try_parse_from(std::iter::once("uavg").chain(args.iter().copied()))
        .expect("arguments parse");
    let out = execute(&cli.command).expect("command succeeds");
    (out.document, out.code)
}
