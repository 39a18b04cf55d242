//! The Galois group `G = N ⋊ P ⊂ A_{2p}` of the closure of an étale double
//! cover of a cyclic `p`-gonal cover, for odd primes `p`.
//!
//! The model acts on `2p` points with blocks `{i, p+i}`. `σ` is the double
//! `p`-cycle, `s_1 = t_1 t_2` with `t_i = (i, p+i)`, and
//! `s_{i+1} = σ^-i s_1 σ^i`. Elements of `N` are encoded by their exponent
//! vector over `(s_1, .., s_{p-1})` as a bitmask (bit `i-1` is `s_i`), and the
//! index-2 subgroups of `N` are kernels of the nonzero functionals on that
//! vector space, encoded the same way.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{GroupConfig, GroupTable, Subgroup};
use crate::perm::Permutation;
use crate::report::Report;

pub const DEFAULT_MAX_P: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelConfig {
    pub max_p: usize,
    pub group: GroupConfig,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            max_p: DEFAULT_MAX_P,
            group: GroupConfig::default(),
        }
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Rejects anything but an odd prime within the configured bound.
pub fn validate_odd_prime(p: usize, max_p: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::KleinCase);
    }
    if p > max_p {
        return Err(Error::PrimeTooLarge { p, max: max_p });
    }
    Ok(())
}

/// `m = (2^{p-1} - 1) / p`.
pub fn orbit_count(p: usize) -> usize {
    ((1usize << (p - 1)) - 1) / p
}

/// An index-2 subgroup of `N`: the kernel of the functional `functional`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalSubgroup {
    pub functional: u32,
    pub subgroup: Subgroup,
}

#[derive(Debug, Clone)]
pub struct ClosureModel {
    p: usize,
    group: Arc<GroupTable>,
    sigma: usize,
    s: Vec<usize>,
    n: Subgroup,
    cyclic: Subgroup,
    maximal: Vec<MaximalSubgroup>,
    orbits: Vec<Vec<usize>>,
    blocks: Vec<[usize; 2]>,
    n_by_coords: Vec<usize>,
    coords: Vec<Option<u32>>,
}

pub fn build_closure_model(p: usize) -> Result<ClosureModel> {
    ClosureModel::build(p, &ModelConfig::default())
}

/// `t_i = (i, p+i)` for 1-based `i`; not an element of `G`.
pub fn block_transposition(p: usize, i: usize) -> Permutation {
    let k = (i - 1) % p;
    Permutation::transposition(2 * p, k, p + k).expect("distinct points")
}

pub fn double_p_cycle(p: usize) -> Permutation {
    let cycles = vec![(0..p).collect(), (p..2 * p).collect()];
    Permutation::from_cycles(2 * p, &cycles).expect("disjoint cycles")
}

/// Lexicographic key of a functional read as `(c_1, .., c_{p-1})`.
fn lex_key(functional: u32, width: usize) -> u32 {
    (0..width).fold(0, |acc, i| (acc << 1) | ((functional >> i) & 1))
}

impl ClosureModel {
    pub fn build(p: usize, config: &ModelConfig) -> Result<ClosureModel> {
        validate_odd_prime(p, config.max_p)?;
        let degree = 2 * p;
        let sigma_perm = double_p_cycle(p);
        let s1_perm = block_transposition(p, 1).compose(&block_transposition(p, 2))?;
        let group = Arc::new(GroupTable::generate(
            &[s1_perm.clone(), sigma_perm.clone()],
            &config.group,
        )?);
        let g = &group;
        let sigma = g.index_of(&sigma_perm).expect("generator");
        let s1 = g.index_of(&s1_perm).expect("generator");
        let s: Vec<usize> = (0..p).map(|i| g.conjugate(s1, g.pow(sigma, i))).collect();

        let n = Subgroup::generated_by(g, &s[..p - 1]);
        let cyclic = Subgroup::generated_by(g, &[sigma]);

        let width = p - 1;
        let n_size = 1usize << width;
        let mut n_by_coords = Vec::with_capacity(n_size);
        let mut coords = vec![None; g.order()];
        for mask in 0..n_size {
            let word: Vec<usize> = (0..width)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| s[i])
                .collect();
            let x = g.product(&word);
            if coords[x].is_some() {
                return Err(Error::Internal(format!(
                    "s-basis is dependent: mask {mask:#b} repeats an element"
                )));
            }
            coords[x] = Some(mask as u32);
            n_by_coords.push(x);
        }

        let mut model = ClosureModel {
            p,
            group: Arc::clone(&group),
            sigma,
            s,
            n,
            cyclic,
            maximal: Vec::new(),
            orbits: Vec::new(),
            blocks: (0..p).map(|i| [i, p + i]).collect(),
            n_by_coords,
            coords,
        };
        model.maximal = enumerate_maximal_subgroups(&model);
        model.orbits = p_orbits_on_subgroups(&model, &model.maximal)?;
        debug_assert_eq!(model.group.degree(), degree);
        Ok(model)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// `s_1, .., s_p` (0-based slice: `s()[0]` is `s_1`).
    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn n(&self) -> &Subgroup {
        &self.n
    }

    /// `P = <σ>`.
    pub fn cyclic(&self) -> &Subgroup {
        &self.cyclic
    }

    pub fn m(&self) -> usize {
        self.orbits.len()
    }

    /// All `2^{p-1} - 1` index-2 subgroups of `N`, in lexicographic order of
    /// their functionals.
    pub fn maximal_subgroups(&self) -> &[MaximalSubgroup] {
        &self.maximal
    }

    /// `P`-orbits as indices into [`Self::maximal_subgroups`]; the first entry
    /// of each orbit is its representative `R_j`, and `R_1 = H`.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// `R_j` for 1-based `j`.
    pub fn representative(&self, j: usize) -> Result<&MaximalSubgroup> {
        if j == 0 || j > self.m() {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.m(),
            });
        }
        Ok(&self.maximal[self.orbits[j - 1][0]])
    }

    pub fn representatives(&self) -> Vec<&MaximalSubgroup> {
        self.orbits.iter().map(|o| &self.maximal[o[0]]).collect()
    }

    /// `H = R_1`, the stabilizer of the first point.
    pub fn h(&self) -> &Subgroup {
        &self.maximal[self.orbits[0][0]].subgroup
    }

    /// Blocks `Δ_i = {i, p+i}` as 0-based point pairs.
    pub fn blocks(&self) -> &[[usize; 2]] {
        &self.blocks
    }

    /// Exponent vector over the s-basis, or `None` outside `N`.
    pub fn n_coords(&self, g: usize) -> Option<u32> {
        self.coords[g]
    }

    pub fn n_element(&self, mask: u32) -> usize {
        self.n_by_coords[mask as usize]
    }

    /// `N` listed by exponent vector.
    pub fn n_elements(&self) -> &[usize] {
        &self.n_by_coords
    }

    /// `k` with `g ∈ N σ^k`: `σ` shifts blocks by one and `N` fixes them.
    pub fn quotient_exponent(&self, g: usize) -> usize {
        self.group.element(g).apply(0) % self.p
    }

    /// Coset representative `g_i = σ^{i-1}` (1-based `i`).
    pub fn coset_rep(&self, i: usize) -> usize {
        self.group.pow(self.sigma, i - 1)
    }

    /// `H_i = g_i^-1 H g_i`.
    pub fn h_conjugate(&self, i: usize) -> Subgroup {
        self.h().conjugate(self.coset_rep(i))
    }

    /// Functional whose kernel is `sub` (a subgroup of `N` of index 2).
    pub fn functional_of(&self, sub: &Subgroup) -> u32 {
        (0..self.p - 1)
            .filter(|&i| !sub.contains(self.s[i]))
            .fold(0, |acc, i| acc | 1 << i)
    }

    fn kernel(&self, functional: u32) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.group.order());
        for (mask, &x) in self.n_by_coords.iter().enumerate() {
            if (mask as u32 & functional).count_ones() % 2 == 0 {
                members.insert(x);
            }
        }
        Subgroup::from_closed(&self.group, members)
    }
}

/// All index-2 subgroups of `N` as kernels of the nonzero functionals on the
/// s-basis coordinates, in lexicographic order of `(c_1, .., c_{p-1})`.
pub fn enumerate_maximal_subgroups(model: &ClosureModel) -> Vec<MaximalSubgroup> {
    let width = model.p - 1;
    let mut functionals: Vec<u32> = (1..1u32 << width).collect();
    functionals.sort_by_key(|&c| lex_key(c, width));
    functionals
        .into_iter()
        .map(|functional| MaximalSubgroup {
            functional,
            subgroup: model.kernel(functional),
        })
        .collect()
}

/// Orbits of `subs` under conjugation by `σ`, as index lists into `subs`.
///
/// Each orbit is listed starting from its lexicographically smallest member
/// and following `S ↦ σ^-1 S σ`. Orbits are ordered by representative, except
/// that the orbit of `H` goes first with `H` as its representative.
pub fn p_orbits_on_subgroups(model: &ClosureModel, subs: &[MaximalSubgroup]) -> Result<Vec<Vec<usize>>> {
    let g = &model.group;
    let p = model.p;
    let position: HashMap<u32, usize> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.functional, i))
        .collect();
    let sigma_inv = g.inv(model.sigma);
    // s_i ∈ σ^-1 S σ  iff  σ s_i σ^-1 ∈ S
    let pulled: Vec<u32> = (0..p - 1)
        .map(|i| {
            model
                .n_coords(g.conjugate(model.s[i], sigma_inv))
                .expect("N is normal")
        })
        .collect();
    let conj = |c: u32| -> u32 {
        (0..p - 1)
            .filter(|&i| (pulled[i] & c).count_ones() % 2 == 1)
            .fold(0, |acc, i| acc | 1 << i)
    };

    let mut visited = vec![false; subs.len()];
    let mut orbits = Vec::new();
    for start in 0..subs.len() {
        if visited[start] {
            continue;
        }
        let mut orbit = vec![start];
        visited[start] = true;
        let mut c = conj(subs[start].functional);
        while c != subs[start].functional {
            let idx = *position
                .get(&c)
                .ok_or_else(|| Error::Internal(format!("conjugate functional {c:#b} missing")))?;
            visited[idx] = true;
            orbit.push(idx);
            c = conj(c);
        }
        if orbit.len() != p {
            return Err(Error::OrbitSize {
                size: orbit.len(),
                p,
            });
        }
        orbits.push(orbit);
    }

    let stab = point_stabilizer(g, 0);
    let h_functional = model.functional_of(&stab);
    let h_pos = position[&h_functional];
    let h_orbit = orbits
        .iter()
        .position(|o| o.contains(&h_pos))
        .ok_or_else(|| Error::Internal("H outside every orbit".into()))?;
    let mut first = orbits.remove(h_orbit);
    let shift = first.iter().position(|&x| x == h_pos).expect("member");
    first.rotate_left(shift);
    orbits.insert(0, first);
    Ok(orbits)
}

pub fn point_stabilizer(g: &Arc<GroupTable>, point: usize) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(g.order());
    for (i, e) in g.elements().iter().enumerate() {
        if e.apply(point) == point {
            members.insert(i);
        }
    }
    Subgroup::from_closed(g, members)
}

fn set_stabilizer(g: &Arc<GroupTable>, block: [usize; 2]) -> FixedBitSet {
    let mut members = FixedBitSet::with_capacity(g.order());
    for (i, e) in g.elements().iter().enumerate() {
        let image = [e.apply(block[0]), e.apply(block[1])];
        if image == block || image == [block[1], block[0]] {
            members.insert(i);
        }
    }
    members
}

/// The defining relations of `G = <s_1..s_p, σ>` and the conjugation chain
/// `σ^-k (t_1 t_2) σ^k = t_{k+1} t_{k+2}`.
pub fn verify_presentation(model: &ClosureModel) -> Report {
    let g = &model.group;
    let p = model.p;
    let id = g.identity();
    let s = &model.s;
    let sigma = model.sigma;
    let mut report = Report::new();

    let t12 = block_transposition(p, 1).then(&block_transposition(p, 2));
    report.push(
        "s1 = t1 t2",
        g.element(s[0]) == &t12,
        format!("s1 = {}", g.element(s[0])),
    );

    let full = g.product(s);
    report.push(
        "s1 s2 ... sp = 1",
        full == id,
        format!("product = {}", g.element(full)),
    );
    let partial = g.product(&s[..p - 1]);
    report.push(
        "sp = s1 ... s(p-1)",
        partial == s[p - 1],
        format!("s{p} = {}", g.element(s[p - 1])),
    );
    report.push(
        "sigma^p = 1",
        g.pow(sigma, p) == id && sigma != id,
        format!("order(sigma) = {}", g.element_order(sigma)),
    );
    report.push(
        "s1^2 = 1",
        g.mul(s[0], s[0]) == id,
        format!("order(s1) = {}", g.element_order(s[0])),
    );
    for j in 1..p {
        let lhs = g.conjugate(s[j - 1], sigma);
        report.push(
            format!("sigma^-1 s{j} sigma = s{}", j + 1),
            lhs == s[j],
            format!("lhs = {}", g.element(lhs)),
        );
    }

    let sigma_perm = g.element(sigma);
    for k in 0..p {
        let sk = sigma_perm.pow(k);
        let lhs = sk.inverse().then(&t12).then(&sk);
        let rhs = block_transposition(p, k + 1).then(&block_transposition(p, k + 2));
        let label = |i: usize| (i - 1) % p + 1;
        report.push(
            format!("sigma^-{k} t1 t2 sigma^{k} = t{} t{}", label(k + 1), label(k + 2)),
            lhs == rhs && g.index_of(&lhs) == Some(s[k]),
            format!("lhs = {lhs}"),
        );
    }
    report
}

/// Group-theoretic structure: orders, `N ≅ Z_2^{p-1}`, `G = N ⋊ P`, parity,
/// faithfulness on the cosets of `H`, and non-normality of `H`.
pub fn verify_structure(model: &ClosureModel) -> Report {
    let g = &model.group;
    let p = model.p;
    let expected = p << (p - 1);
    let mut report = Report::new();
    report.push(
        "|G| = p 2^(p-1)",
        g.order() == expected,
        format!("|G| = {}, expected {expected}", g.order()),
    );
    report.push(
        "|N| = 2^(p-1)",
        model.n.order() == 1 << (p - 1),
        format!("|N| = {}", model.n.order()),
    );
    report.push(
        "|P| = p",
        model.cyclic.order() == p,
        format!("|P| = {}", model.cyclic.order()),
    );
    report.push("N normal in G", model.n.is_normal(), "closed under conjugation by generators");
    let meet = model.n.intersection(&model.cyclic).map(|s| s.order()).unwrap_or(0);
    report.push(
        "N ∩ P = 1 and |N||P| = |G|",
        meet == 1 && model.n.order() * model.cyclic.order() == g.order(),
        format!("|N ∩ P| = {meet}"),
    );
    let involutions = model
        .n
        .members()
        .filter(|&x| x != g.identity())
        .all(|x| g.element_order(x) == 2);
    let commuting = model.s.iter().all(|&a| {
        model.s.iter().all(|&b| g.mul(a, b) == g.mul(b, a))
    });
    report.push(
        "N elementary abelian",
        involutions && commuting,
        "non-identity elements of N have order 2 and s_i commute",
    );
    report.push(
        "s1..s(p-1) independent",
        model.n_by_coords.len() == model.n.order(),
        format!("{} distinct products", model.n_by_coords.len()),
    );
    let quotient = model.n.coset_action(model.sigma);
    report.push(
        "G/N cyclic of order p",
        quotient.cycle_type() == vec![p],
        format!("sigma acts on G/N as {quotient}"),
    );
    report.push(
        "G ⊂ A_2p",
        g.elements().iter().all(Permutation::is_even),
        "every element is an even permutation",
    );
    let space = model.h().coset_space();
    let kernel = (0..g.order())
        .filter(|&x| space.action(x).is_identity())
        .count();
    report.push(
        "action on cosets of H faithful",
        kernel == 1 && space.len() == 2 * p,
        format!("{} cosets, kernel of order {kernel}", space.len()),
    );
    let closure = model.h().normal_closure();
    report.push(
        "Y -> P1 not Galois",
        !model.h().is_normal() && closure.order() > model.h().order(),
        format!(
            "normal closure of H has order {} > |H| = {}",
            closure.order(),
            model.h().order()
        ),
    );
    report
}

/// Blocks `Δ_i = {i, p+i}`: invariance, stabilizers, and the point
/// stabilizers `H_i` inside `N`.
pub fn verify_block_structure(model: &ClosureModel) -> Report {
    let g = &model.group;
    let p = model.p;
    let mut report = Report::new();

    let block_of = |x: usize| x % p;
    let invariant = g.generators().iter().all(|&x| {
        let e = g.element(x);
        model
            .blocks
            .iter()
            .all(|b| block_of(e.apply(b[0])) == block_of(e.apply(b[1])))
    });
    report.push("blocks form a G-invariant partition", invariant, format!("{p} blocks {{i, p+i}}"));

    for (i, &block) in model.blocks.iter().enumerate() {
        let stab = set_stabilizer(g, block);
        report.push(
            format!("stabilizer of Δ{} = N", i + 1),
            &stab == model.n.bitset(),
            format!("order {}", stab.count_ones(..)),
        );
    }

    let mut meet = Subgroup::whole(g);
    for i in 1..=p {
        let hi = model.h_conjugate(i);
        let [a, b] = model.blocks[i - 1];
        let fixes = hi
            .members()
            .all(|x| g.element(x).apply(a) == a && g.element(x).apply(b) == b);
        report.push(
            format!("H{i} fixes both points of Δ{i}"),
            fixes && hi.is_subgroup_of(&model.n).unwrap_or(false),
            format!("|H{i}| = {}", hi.order()),
        );
        if i < p {
            meet = meet.intersection(&hi).expect("same parent");
        }
    }
    report.push(
        "H1 ∩ ... ∩ H(p-1) = 1",
        meet.order() == 1,
        format!("order {}", meet.order()),
    );
    report
}

/// Counts from the subgroup enumeration: `2^{p-1} - 1` subgroups, `m` orbits
/// each of size `p`, with `m p = 2^{p-1} - 1`.
pub fn verify_subcover_count(model: &ClosureModel) -> Report {
    let p = model.p;
    let total = (1usize << (p - 1)) - 1;
    let mut report = Report::new();
    report.push(
        "index-2 subgroups of N",
        model.maximal.len() == total
            && model
                .maximal
                .iter()
                .all(|s| s.subgroup.order() * 2 == model.n.order()),
        format!("{} found, expected {total}", model.maximal.len()),
    );
    report.push(
        "P-orbits all of size p",
        model.orbits.iter().all(|o| o.len() == p),
        format!("sizes {:?}", model.orbits.iter().map(Vec::len).collect::<Vec<_>>()),
    );
    report.push(
        "m = (2^(p-1) - 1)/p",
        model.m() == orbit_count(p) && model.m() * p == total,
        format!("m = {}", model.m()),
    );
    report.push(
        "R1 = H",
        model.h() == &point_stabilizer(&model.group, 0),
        "first representative is the stabilizer of point 1",
    );
    report
}
