//! Permutations of `{0, .., n-1}`.
//!
//! Composition is left to right: `a.compose(&b)` applies `a` first, then `b`.
//! This models right actions (`x^(ab) = (x^a)^b`), the only convention used in
//! this crate. Points are 0-based internally; cycle notation is 1-based.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} outside 1..={degree}",
                        x + 1
                    )));
                }
                if used[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} repeated in cycle notation",
                        x + 1
                    )));
                }
                used[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition swapping two 0-based points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({}, {}) is degenerate",
                a + 1,
                b + 1
            )));
        }
        Self::from_cycles(degree, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// "Apply `self`, then `other`."
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: usize) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        for _ in 0..exp {
            result = result.then(self);
        }
        result
    }

    /// `g^-1 * self * g`, i.e. `self` relabelled by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        g.inverse().compose(self)?.compose(g)
    }

    /// All cycles, fixed points included, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths including fixed points, sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn is_even(&self) -> bool {
        // sign = (-1)^(n - #cycles)
        (self.degree() - self.cycle_count()) % 2 == 0
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, |acc, len| acc / gcd(acc, len) * len)
    }

    /// Parses 1-based cycle notation such as `"(1,2,3)(4,5,6)"`. Whitespace is
    /// ignored; `"()"` and the empty string denote the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {text:?}")))?;
            let inner = &body[..close];
            rest = &body[close + 1..];
            if inner.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for token in inner.split(',') {
                let point: usize = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {token:?} in {text:?}")))?;
                if point == 0 {
                    return Err(Error::Parse(format!("points are 1-based in {text:?}")));
                }
                cycle.push(point - 1);
            }
            cycles.push(cycle);
        }
        Permutation::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation without fixed points; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            let points: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", points.join(","))?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sigma3() -> Permutation {
        Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap()
    }

    fn s1_p3() -> Permutation {
        Permutation::from_cycles(6, &[vec![0, 3], vec![1, 4]]).unwrap()
    }

    #[test]
    fn compose_with_identity() {
        let id = Permutation::identity(6);
        assert_eq!(id.compose(&sigma3()).unwrap(), sigma3());
        assert_eq!(sigma3().compose(&id).unwrap(), sigma3());
    }

    #[test]
    fn compose_inverse_pair() {
        let s = sigma3();
        assert!(s.compose(&s.pow(2)).unwrap().is_identity());
    }

    #[test]
    fn compose_is_left_to_right() {
        // hand-multiplied: 0->3->4, 1->4->5, 2->2->0, 3->0->1, 4->1->2, 5->5->3
        let prod = s1_p3().compose(&sigma3()).unwrap();
        assert_eq!(prod.images(), &[4, 5, 0, 1, 2, 3]);
    }

    #[test]
    fn compose_degree_mismatch() {
        let err = Permutation::identity(3)
            .compose(&Permutation::identity(4))
            .unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(6).cycle_type(), vec![1; 6]);
        assert_eq!(sigma3().cycle_type(), vec![3, 3]);
        assert_eq!(s1_p3().cycle_type(), vec![2, 2, 1, 1]);
    }

    #[test]
    fn parity() {
        assert!(Permutation::identity(6).is_even());
        assert!(sigma3().is_even());
        for p in [5usize, 7, 11] {
            let cycles = vec![(0..p).collect(), (p..2 * p).collect()];
            assert!(Permutation::from_cycles(2 * p, &cycles).unwrap().is_even());
        }
        assert!(!Permutation::transposition(6, 0, 3).unwrap().is_even());
    }

    #[test]
    fn order_of_elements() {
        assert_eq!(sigma3().order(), 3);
        assert_eq!(s1_p3().order(), 2);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let s = sigma3();
        assert_eq!(s.to_string(), "(1,2,3)(4,5,6)");
        assert_eq!(Permutation::parse_cycles(" (1, 2,3) (4,5 ,6)", 6).unwrap(), s);
        assert_eq!(Permutation::identity(6).to_string(), "()");
        assert!(Permutation::parse_cycles("()", 6).unwrap().is_identity());
        assert!(Permutation::parse_cycles("", 6).unwrap().is_identity());
    }

    #[test]
    fn cycle_notation_errors() {
        assert!(Permutation::parse_cycles("(1,2", 6).is_err());
        assert!(Permutation::parse_cycles("(1,7)", 6).is_err());
        assert!(Permutation::parse_cycles("(0,1)", 6).is_err());
        assert!(Permutation::parse_cycles("(1,2)(2,3)", 6).is_err());
        assert!(Permutation::parse_cycles("1,2", 6).is_err());
        assert!(Permutation::parse_cycles("(a,b)", 6).is_err());
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn exhaustive_group_axioms_degree_4() {
        let all = all_perms(4);
        let id = Permutation::identity(4);
        for a in &all {
            assert_eq!(a.compose(&a.inverse()).unwrap(), id);
            assert_eq!(a.inverse().compose(a).unwrap(), id);
            for b in &all {
                let ab = a.compose(b).unwrap();
                assert_eq!(ab.is_even(), a.is_even() == b.is_even());
                for c in &all {
                    assert_eq!(
                        ab.compose(c).unwrap(),
                        a.compose(&b.compose(c).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>) {
            if prefix.len() == n {
                out.push(Permutation::from_images(prefix.clone()).unwrap());
                return;
            }
            for x in 0..n {
                if !prefix.contains(&x) {
                    prefix.push(x);
                    rec(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), n, &mut out);
        out
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn associativity_and_inverse(
            (a, b, c) in (1usize..=8).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))
        ) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        }

        #[test]
        fn sign_is_multiplicative(
            (a, b) in (1usize..=10).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))
        ) {
            let ab = a.compose(&b).unwrap();
            prop_assert_eq!(ab.is_even(), a.is_even() == b.is_even());
        }

        #[test]
        fn cycle_type_conjugation_invariant(
            (a, g) in (1usize..=10).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))
        ) {
            prop_assert_eq!(a.conjugate_by(&g).unwrap().cycle_type(), a.cycle_type());
            prop_assert_eq!(a.cycle_type().iter().sum::<usize>(), a.degree());
        }

        #[test]
        fn cycle_notation_parses_back((a, n) in (1usize..=12).prop_flat_map(|n| (arb_perm(n), Just(n)))) {
            prop_assert_eq!(Permutation::parse_cycles(&a.to_string(), n).unwrap(), a);
        }
    }
}
