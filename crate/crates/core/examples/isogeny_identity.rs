//! Φ_i = (Σ_{h∈R_i} h)(Σ σ^k) acts as 2^{p-2} on the eigen-projector e_i.
//!
//! cargo run --example isogeny_identity -- 5

use pgonal::galois::build_closure_model;
use pgonal::isogeny::{phi_constant, torsion_containment_shadow, verify_phi_identity};

fn main() -> pgonal::Result<()> {
    let p = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let model = build_closure_model(p)?;
    let report = verify_phi_identity(&model)?;
    for check in &report.checks {
        println!("{}  {}", if check.passed { "ok  " } else { "FAIL" }, check.name);
    }
    println!("Phi_i e_i = {} e_i for all {} indices: {}", phi_constant(p), model.m(), report.passed());
    let bounds = torsion_containment_shadow(&model);
    println!("kernel bounds ({}, {}): {}", bounds.lower, bounds.upper, bounds.strictness);
    Ok(())
}
