//! Runs a scenario config through the experiment runner and lists what it wrote.
//!
//! `cargo run --example scenario_run -- scenarios/z_coverage.toml /tmp/out`

use std::path::PathBuf;

use algrec::experiment::{run, Command, RunOptions};

fn main() -> algrec::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/z_coverage.toml")
    });
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("algrec-scenario-run"));
    let options = RunOptions {
        config: Some(config),
        seeds: vec![1, 2, 3, 4, 5],
        out: Some(out),
        threads: None,
    };
    let outcome = run(&Command::ArEstimate, &options)?;
    print!("{}", outcome.summary);
    for f in outcome.manifest.files() {
        println!("wrote {}", outcome.out_dir.join(f).display());
    }
    Ok(())
}
