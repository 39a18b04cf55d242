//! The whole pipeline as a library call, printed as JSON.
//!
//! cargo run --example full_report -- 5 3

use pgonal::pipeline::{run_report, RunOptions};

fn main() -> pgonal::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse().ok());
    let p = args.next().flatten().unwrap_or(5);
    let beta = args.next().flatten().unwrap_or(3);
    let report = run_report(p, Some(beta), &RunOptions::default())?;
    print!("{}", report.to_json());
    eprintln!("verdict: {}", report.verdict);
    Ok(())
}
