//! Exact character table of G with values in Q(ζ_p).
//!
//! cargo run --example character_table -- 3

use pgonal::galois::build_closure_model;
use pgonal::reptheory::{verify_table, CharacterTable};

fn main() -> pgonal::Result<()> {
    let p = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let model = build_closure_model(p)?;
    let table = CharacterTable::build(&model)?;
    let summary = table.summary(model.group());
    for class in &summary.classes {
        println!("class {} of size {}", class.representative, class.size);
    }
    for chi in summary.irreducibles.iter().chain(&summary.rational) {
        println!("{:>8} (deg {}): {}", chi.label, chi.degree, chi.values.join(" | "));
    }
    let report = verify_table(&model, &table);
    println!("inventory checks passed: {}", report.passed());
    Ok(())
}
