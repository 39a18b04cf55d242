//! Finite permutation groups as indexed element tables.
//!
//! Elements are sorted lexicographically by image array, so the identity is
//! always index 0 and indices are reproducible. Subgroups are bitsets over the
//! parent's index space.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupConfig {
    /// Closure aborts once it would exceed this many elements.
    pub size_cap: usize,
    /// A dense Cayley table is stored only for groups up to this order;
    /// larger groups multiply on demand.
    pub dense_table_limit: usize,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            size_cap: 1_000_000,
            dense_table_limit: 4096,
        }
    }
}

pub struct GroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    generators: Vec<usize>,
    inv: Vec<usize>,
    cayley: Option<Vec<u32>>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Closure of `gens` with the default configuration.
pub fn generate(gens: &[Permutation]) -> Result<GroupTable> {
    GroupTable::generate(gens, &GroupConfig::default())
}

impl GroupTable {
    pub fn generate(gens: &[Permutation], config: &GroupConfig) -> Result<GroupTable> {
        let first = gens.first().ok_or(Error::EmptyGenerators)?;
        let degree = first.degree();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }

        let identity = Permutation::identity(degree);
        let mut found: HashMap<Permutation, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        found.insert(identity.clone(), ());
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.then(g);
                if !found.contains_key(&y) {
                    if found.len() >= config.size_cap {
                        return Err(Error::SizeCapExceeded {
                            cap: config.size_cap,
                        });
                    }
                    found.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }

        let mut elements: Vec<Permutation> = found.into_keys().collect();
        elements.sort();
        let lookup: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let inv = elements.iter().map(|e| lookup[&e.inverse()]).collect();
        let generators = gens.iter().map(|g| lookup[g]).collect();

        let mut table = GroupTable {
            degree,
            elements,
            lookup,
            generators,
            inv,
            cayley: None,
        };
        if table.order() <= config.dense_table_limit {
            table.cayley = Some(table.build_cayley());
        }
        Ok(table)
    }

    /// Rows are filled along a spanning tree of the Cayley graph:
    /// `x * (y g) = (x y) g`, so only right multiplication by generators is
    /// ever looked up.
    fn build_cayley(&self) -> Vec<u32> {
        let n = self.order();
        let right: Vec<Vec<u32>> = self
            .generators
            .iter()
            .map(|&g| {
                let gp = &self.elements[g];
                self.elements
                    .iter()
                    .map(|e| self.lookup[&e.then(gp)] as u32)
                    .collect()
            })
            .collect();

        // (element, parent, generator slot) in BFS order from the identity
        let mut tree: Vec<(usize, usize, usize)> = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (slot, row) in right.iter().enumerate() {
                let y = row[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    tree.push((y, x, slot));
                    queue.push_back(y);
                }
            }
        }

        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let row = &mut table[x * n..(x + 1) * n];
            row[0] = x as u32;
            for &(y, parent, slot) in &tree {
                row[y] = right[slot][row[parent] as usize];
            }
        }
        table
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub fn has_dense_table(&self) -> bool {
        self.cayley.is_some()
    }

    /// Index of `element(a) * element(b)` (apply `a`, then `b`).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.cayley {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.lookup[&self.elements[a].then(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, exp: usize) -> usize {
        (0..exp).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    /// `g^-1 * x * g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity(), |acc, &x| self.mul(acc, x))
    }

    /// Member bitset of the subgroup generated by `gens`.
    pub fn closure_of(&self, gens: &[usize]) -> FixedBitSet {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(self.identity());
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    queue.push_back(y);
                }
            }
        }
        members
    }

    pub fn generates_whole(&self, gens: &[usize]) -> bool {
        self.closure_of(gens).count_ones(..) == self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Conjugacy classes, each sorted, ordered by (size, smallest index).
    /// The identity class comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            let mut class = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in &self.generators {
                    let y = self.conjugate(x, g);
                    if !assigned[y] {
                        assigned[y] = true;
                        class.push(y);
                        queue.push_back(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes.sort_by_key(|c| (c.len(), c[0]));
        classes
    }

    pub fn listing(&self) -> GroupListing {
        GroupListing {
            degree: self.degree.to_string(),
            order: self.order().to_string(),
            generators: self
                .generators
                .iter()
                .map(|&g| self.elements[g].to_string())
                .collect(),
            generator_indices: self.generators.iter().map(|g| g.to_string()).collect(),
            elements: self.elements.iter().map(ToString::to_string).collect(),
        }
    }
}

/// Serialized form of a group table: canonical element list plus generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupListing {
    pub degree: String,
    pub order: String,
    pub generators: Vec<String>,
    pub generator_indices: Vec<String>,
    pub elements: Vec<String>,
}

#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<GroupTable>,
    members: FixedBitSet,
    order: usize,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order)
            .field("members", &self.members.ones().collect::<Vec<_>>())
            .finish()
    }
}

impl Subgroup {
    pub fn whole(parent: &Arc<GroupTable>) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(parent.order());
        members.insert_range(..);
        Self::from_closed(parent, members)
    }

    pub fn trivial(parent: &Arc<GroupTable>) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(parent.order());
        members.insert(parent.identity());
        Self::from_closed(parent, members)
    }

    pub fn generated_by(parent: &Arc<GroupTable>, gens: &[usize]) -> Subgroup {
        Self::from_closed(parent, parent.closure_of(gens))
    }

    /// Validates closure under multiplication (quadratic in the subgroup order).
    pub fn from_members(parent: &Arc<GroupTable>, members: FixedBitSet) -> Result<Subgroup> {
        if members.len() != parent.order() {
            return Err(Error::NotASubgroup("bitset length differs from group order".into()));
        }
        if !members.contains(parent.identity()) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for a in members.ones() {
            for b in members.ones() {
                if !members.contains(parent.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "product of elements {a} and {b} escapes"
                    )));
                }
            }
        }
        Ok(Self::from_closed(parent, members))
    }

    /// Caller guarantees `members` is closed; Lagrange is still asserted.
    pub(crate) fn from_closed(parent: &Arc<GroupTable>, members: FixedBitSet) -> Subgroup {
        let order = members.count_ones(..);
        assert!(
            order > 0 && parent.order() % order == 0,
            "subgroup order {order} does not divide {}",
            parent.order()
        );
        Subgroup {
            parent: Arc::clone(parent),
            members,
            order,
        }
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn bitset(&self) -> &FixedBitSet {
        &self.members
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.check_parent(other)?;
        Ok(self.members.is_subset(&other.members))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Ok(Self::from_closed(&self.parent, members))
    }

    /// `g^-1 * S * g`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.parent.order());
        for s in self.members.ones() {
            members.insert(self.parent.conjugate(s, g));
        }
        Self::from_closed(&self.parent, members)
    }

    /// Closed under conjugation by the parent's generators suffices.
    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.generators().iter().all(|&x| {
            self.members
                .ones()
                .all(|s| self.members.contains(g.conjugate(s, x)))
        })
    }

    /// Smallest normal subgroup of the parent containing this one.
    pub fn normal_closure(&self) -> Subgroup {
        let g = &self.parent;
        let mut gens: Vec<usize> = self.members.ones().collect();
        let mut current = self.members.clone();
        loop {
            let mut grew = false;
            for &x in g.generators() {
                for s in current.ones() {
                    let c = g.conjugate(s, x);
                    if !current.contains(c) {
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return Self::from_closed(g, current);
            }
            current = g.closure_of(&gens);
        }
    }

    /// Right cosets `S x`, each sorted; blocks ordered by smallest element,
    /// so the subgroup itself comes first.
    pub fn right_cosets(&self) -> Vec<Vec<usize>> {
        self.coset_space().blocks
    }

    pub fn coset_space(&self) -> CosetSpace {
        let g = &self.parent;
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut blocks = Vec::with_capacity(self.index());
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block: Vec<usize> = self.members.ones().map(|s| g.mul(s, x)).collect();
            block.sort_unstable();
            for &y in &block {
                coset_of[y] = id;
            }
            blocks.push(block);
        }
        CosetSpace {
            parent: Arc::clone(g),
            blocks,
            coset_of,
        }
    }

    /// Permutation of the right cosets induced by right multiplication by `g`.
    pub fn coset_action(&self, g: usize) -> Permutation {
        self.coset_space().action(g)
    }
}

/// Right cosets of a subgroup with an element-to-coset lookup.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    parent: Arc<GroupTable>,
    blocks: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
}

impl CosetSpace {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn action(&self, g: usize) -> Permutation {
        let images = self
            .blocks
            .iter()
            .map(|b| self.coset_of[self.parent.mul(b[0], g)])
            .collect();
        Permutation::from_images(images).expect("right multiplication permutes cosets")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let c: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &c).unwrap()
    }

    fn a4_model() -> Arc<GroupTable> {
        let s1 = cyc(6, &[&[0, 3], &[1, 4]]);
        let sigma = cyc(6, &[&[0, 1, 2], &[3, 4, 5]]);
        Arc::new(generate(&[s1, sigma]).unwrap())
    }

    #[test]
    fn trivial_closure() {
        let g = generate(&[Permutation::identity(5)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn klein_closure() {
        let r = cyc(4, &[&[0, 1], &[2, 3]]);
        let s = cyc(4, &[&[0, 2], &[1, 3]]);
        let g = generate(&[r, s]).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!(g.conjugacy_classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn order_twelve_model() {
        let g = a4_model();
        assert_eq!(g.order(), 12);
        assert!(g.element(0).is_identity());
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn size_cap_is_enforced() {
        let sigma = cyc(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let s1 = cyc(6, &[&[0, 3], &[1, 4]]);
        let config = GroupConfig {
            size_cap: 10,
            ..GroupConfig::default()
        };
        let err = GroupTable::generate(&[s1, sigma], &config).unwrap_err();
        assert_eq!(err, Error::SizeCapExceeded { cap: 10 });
        assert!(err.to_string().contains("10"));
    }

    #[test]
    fn empty_and_mixed_generators() {
        assert_eq!(generate(&[]).unwrap_err(), Error::EmptyGenerators);
        let err = generate(&[Permutation::identity(3), Permutation::identity(4)]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn cayley_table_is_latin_square_and_matches_composition() {
        let g = a4_model();
        let n = g.order();
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                let ab = g.mul(a, b);
                assert_eq!(g.element(ab), &g.element(a).then(g.element(b)));
                row[ab] = true;
                col[g.mul(b, a)] = true;
            }
            assert!(row.iter().all(|&x| x) && col.iter().all(|&x| x));
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn sparse_and_dense_tables_agree() {
        let sigma = cyc(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let s1 = cyc(6, &[&[0, 3], &[1, 4]]);
        let sparse = GroupTable::generate(
            &[s1.clone(), sigma.clone()],
            &GroupConfig {
                dense_table_limit: 0,
                ..GroupConfig::default()
            },
        )
        .unwrap();
        let dense = generate(&[s1, sigma]).unwrap();
        assert!(!sparse.has_dense_table() && dense.has_dense_table());
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(sparse.mul(a, b), dense.mul(a, b));
            }
        }
    }

    #[test]
    fn conjugacy_classes_of_order_twelve_model() {
        let g = a4_model();
        let classes = g.conjugacy_classes();
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
        assert_eq!(classes[0], vec![0]);
        assert_eq!(sizes.iter().sum::<usize>(), 12);
    }

    #[test]
    fn cosets_and_actions() {
        let g = a4_model();
        let whole = Subgroup::whole(&g);
        assert_eq!(whole.right_cosets().len(), 1);
        assert!(whole.coset_action(5).is_identity());

        let s: Vec<usize> = (0..g.order())
            .filter(|&x| g.element_order(x) <= 2)
            .collect();
        let n = Subgroup::generated_by(&g, &s);
        assert_eq!(n.order(), 4);
        let cosets = n.right_cosets();
        assert_eq!(cosets.len(), 3);
        assert!(cosets.iter().all(|c| c.len() == 4));
        assert!(cosets[0].contains(&0));

        let sigma = g
            .index_of(&cyc(6, &[&[0, 1, 2], &[3, 4, 5]]))
            .unwrap();
        let s1 = g.index_of(&cyc(6, &[&[0, 3], &[1, 4]])).unwrap();
        assert_eq!(n.coset_action(sigma).cycle_type(), vec![3]);
        assert!(n.coset_action(s1).is_identity());

        let h = Subgroup::generated_by(&g, &[g.index_of(&cyc(6, &[&[1, 4], &[2, 5]])).unwrap()]);
        assert_eq!(h.right_cosets().len(), 6);
        assert!(h.right_cosets().iter().all(|c| c.len() == 2));
    }

    #[test]
    fn coset_action_is_homomorphism() {
        let g = a4_model();
        let h = Subgroup::generated_by(&g, &[g.index_of(&cyc(6, &[&[1, 4], &[2, 5]])).unwrap()]);
        let space = h.coset_space();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = space.action(a).then(&space.action(b));
                assert_eq!(lhs, space.action(g.mul(a, b)));
            }
        }
        // faithful: only the identity acts trivially
        let kernel: Vec<usize> = (0..g.order())
            .filter(|&x| space.action(x).is_identity())
            .collect();
        assert_eq!(kernel, vec![0]);
    }

    #[test]
    fn normality() {
        let g = a4_model();
        assert!(Subgroup::trivial(&g).is_normal());
        assert!(Subgroup::whole(&g).is_normal());
        let h = Subgroup::generated_by(&g, &[g.index_of(&cyc(6, &[&[1, 4], &[2, 5]])).unwrap()]);
        assert!(!h.is_normal());
        assert_eq!(h.normal_closure().order(), 4);
    }

    #[test]
    fn from_members_validates() {
        let g = a4_model();
        let mut bits = FixedBitSet::with_capacity(12);
        bits.insert(0);
        bits.insert(1);
        bits.insert(2);
        assert!(Subgroup::from_members(&g, bits).is_err());
        let mut no_id = FixedBitSet::with_capacity(12);
        no_id.insert(3);
        assert!(Subgroup::from_members(&g, no_id).is_err());
        let ok = Subgroup::from_members(&g, Subgroup::trivial(&g).bitset().clone()).unwrap();
        assert_eq!(ok.order(), 1);
    }

    #[test]
    fn parent_mismatch_is_an_error() {
        let g1 = a4_model();
        let g2 = a4_model();
        let a = Subgroup::trivial(&g1);
        let b = Subgroup::trivial(&g2);
        assert_eq!(a.intersection(&b).unwrap_err(), Error::ParentMismatch);
    }
}
