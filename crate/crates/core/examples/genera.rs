//! Genera of X, Y_j, Z and T by Riemann–Hurwitz on coset actions, compared
//! with the closed forms.
//!
//! cargo run --example genera -- 5

use pgonal::covers::{genus_closed_forms, genus_table_by_oracle, CoverParams};
use pgonal::galois::build_closure_model;
use pgonal::monodromy::find_monodromy;

fn main() -> pgonal::Result<()> {
    let p = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let model = build_closure_model(p)?;
    println!("beta  g(X)  g(Y)  g(Z)  g(T)  closed forms agree");
    for beta in 3..=8 {
        let datum = find_monodromy(&model, beta)?;
        let oracle = genus_table_by_oracle(&model, &datum)?;
        let closed = genus_closed_forms(&CoverParams::new(p, beta)?, model.m())?;
        println!(
            "{beta:>4}  {:>4}  {:>4}  {:>4}  {:>4}  {}",
            oracle.g_x, oracle.g_y[0], oracle.g_z, oracle.g_t, oracle == closed
        );
    }
    Ok(())
}
