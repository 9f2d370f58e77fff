//! A full report as the command-line tool produces it, built in-process.
//!
//! cargo run --release --example batch_report -- 1,1,1,2

use hyperkirwan::cli::{canonical_json, run, Command, RunConfig};

fn main() -> hyperkirwan::Result<()> {
    let xi = std::env::args().nth(1).as_deref().unwrap_or("1,1,1,2").parse()?;
    let report = run(&RunConfig::new(Command::Report).with_xi(xi));
    for stage in &report.stages {
        println!("{:<16} {:<5} {:>8.1} ms", stage.name, stage.passed, stage.elapsed_ms);
    }
    println!("exit status {}", report.exit_code());
    let canonical = canonical_json(&report.to_value());
    println!("canonical form: {} bytes", canonical.len());
    Ok(())
}
