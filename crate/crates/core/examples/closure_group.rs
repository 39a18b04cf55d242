//! Builds the Galois closure group G ⊂ A_2p and checks its presentation.
//!
//! cargo run --example closure_group -- 5

use pgonal::galois::{build_closure_model, verify_presentation, verify_structure};

fn main() -> pgonal::Result<()> {
    let p = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let model = build_closure_model(p)?;
    let g = model.group();
    println!("p = {p}: |G| = {}, |N| = {}, |P| = {}", g.order(), model.n().order(), model.cyclic().order());
    println!("sigma = {}", g.element(model.sigma()));
    for (i, &s) in model.s().iter().enumerate() {
        println!("s{} = {}", i + 1, g.element(s));
    }
    let mut report = verify_presentation(&model);
    report.extend(verify_structure(&model));
    for check in &report.checks {
        println!("{}  {}", if check.passed { "ok  " } else { "FAIL" }, check.name);
    }
    Ok(())
}
