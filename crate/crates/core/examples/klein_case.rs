//! The p = 2 case: Klein group genera and group-algebra identities.
//!
//! cargo run --example klein_case -- 2 3

use pgonal::covers::klein_genus_table;
use pgonal::isogeny::verify_klein_identities;

fn main() -> pgonal::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse().ok());
    let beta_r = args.next().flatten().unwrap_or(2);
    let beta_rs = args.next().flatten().unwrap_or(3);
    let table = klein_genus_table(beta_r, beta_rs)?;
    let g = table.oracle;
    println!("g(Y) = {}, g(Y_s) = {}, g(Y_r) = {}, g(Y_rs) = {}", g.g_y, g.g_ys, g.g_yr, g.g_yrs);
    println!("dim P(Y/Y_s) = {}", table.dim_prym);
    let mut report = table.report();
    report.extend(verify_klein_identities(beta_r, beta_rs)?);
    for check in &report.checks {
        println!("{}  {}", if check.passed { "ok  " } else { "FAIL" }, check.name);
    }
    Ok(())
}
