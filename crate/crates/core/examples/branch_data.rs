//! Searches for branch data (a generating product-one tuple of order-p
//! elements outside N) and prints it in the monodromy file format.
//!
//! cargo run --example branch_data -- 3 4

use pgonal::galois::build_closure_model;
use pgonal::monodromy::{find_monodromy_tuples, validate_monodromy, SearchOptions};

fn main() -> pgonal::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse().ok());
    let p = args.next().flatten().unwrap_or(3);
    let beta = args.next().flatten().unwrap_or(4);
    let model = build_closure_model(p)?;
    let tuples = find_monodromy_tuples(&model, beta, &SearchOptions::default(), 3)?;
    for (k, datum) in tuples.iter().enumerate() {
        println!("# datum {} ({})", k + 1, if validate_monodromy(datum).passed() { "valid" } else { "invalid" });
        print!("{}", datum.to_text());
    }
    Ok(())
}
