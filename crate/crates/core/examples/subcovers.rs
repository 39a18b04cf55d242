//! Index-2 subgroups of N and their P-orbits: the étale double covers Y_j -> X
//! up to the action of P.
//!
//! cargo run --example subcovers -- 5

use pgonal::galois::build_closure_model;

fn main() -> pgonal::Result<()> {
    let p = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let model = build_closure_model(p)?;
    let subs = model.maximal_subgroups();
    println!("{} index-2 subgroups of N, m = {} orbits", subs.len(), model.m());
    for (j, orbit) in model.orbits().iter().enumerate() {
        let functionals: Vec<String> = orbit
            .iter()
            .map(|&i| format!("{:0w$b}", subs[i].functional, w = p - 1))
            .collect();
        println!("R{}: orbit [{}]", j + 1, functionals.join(" "));
    }
    println!("R1 = H: {}", model.representative(1)?.subgroup == *model.h());
    Ok(())
}
