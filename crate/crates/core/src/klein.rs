//! The `p = 2` case: the Klein four-group `<r, s>` acting on 4 points.

use std::sync::Arc;

use crate::group::{generate, GroupTable, Subgroup};
use crate::perm::Permutation;
use crate::report::Report;

#[derive(Debug, Clone)]
pub struct KleinModel {
    group: Arc<GroupTable>,
    r: usize,
    s: usize,
    rs: usize,
}

impl Default for KleinModel {
    fn default() -> Self {
        Self::new()
    }
}

impl KleinModel {
    pub fn new() -> KleinModel {
        let r = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).expect("valid");
        let s = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).expect("valid");
        let group = Arc::new(generate(&[r.clone(), s.clone()]).expect("order 4"));
        let r = group.index_of(&r).expect("generator");
        let s = group.index_of(&s).expect("generator");
        let rs = group.mul(r, s);
        KleinModel { group, r, s, rs }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn rs(&self) -> usize {
        self.rs
    }

    pub fn subgroup(&self, g: usize) -> Subgroup {
        Subgroup::generated_by(&self.group, &[g])
    }
}

/// The closure of two double transpositions in `A_4` is the Klein group of
/// order 4, so `Y -> P1` is Galois when `p = 2`.
pub fn verify_klein_group(model: &KleinModel) -> Report {
    let g = model.group();
    let mut report = Report::new();
    report.push("|G| = 4", g.order() == 4, format!("|G| = {}", g.order()));
    report.push(
        "G ⊂ A_4",
        g.elements().iter().all(Permutation::is_even),
        "all elements even",
    );
    let involutions = (1..g.order()).all(|x| g.element_order(x) == 2);
    report.push(
        "G is the Klein group",
        involutions && g.is_abelian(),
        "abelian with three involutions",
    );
    report.push(
        "rs = sr",
        g.mul(model.r, model.s) == g.mul(model.s, model.r),
        format!("rs = {}", g.element(model.rs)),
    );
    report
}
