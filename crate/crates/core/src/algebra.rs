//! The rational group algebra `Q[G]`, stored sparsely.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};

/// `Σ c_g g` with no zero coefficients stored.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    parent: Arc<GroupTable>,
    coeffs: BTreeMap<usize, BigRational>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(parent: &Arc<GroupTable>) -> Self {
        AlgebraElement {
            parent: Arc::clone(parent),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(parent: &Arc<GroupTable>) -> Self {
        Self::element(parent, parent.identity())
    }

    pub fn element(parent: &Arc<GroupTable>, g: usize) -> Self {
        Self::from_terms(parent, [(g, BigRational::one())])
    }

    /// `Σ_{h ∈ sub} h`.
    pub fn subgroup_sum(sub: &Subgroup) -> Self {
        Self::from_terms(sub.parent(), sub.members().map(|h| (h, BigRational::one())))
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_terms(
        parent: &Arc<GroupTable>,
        terms: impl IntoIterator<Item = (usize, BigRational)>,
    ) -> Self {
        let mut out = Self::zero(parent);
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    fn add_term(&mut self, g: usize, c: BigRational) {
        assert!(g < self.parent.order(), "element index out of range");
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(g).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn coeff(&self, g: usize) -> BigRational {
        self.coeffs.get(&g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> + '_ {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(BigRational::is_integer)
    }

    fn same_parent(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let mut out = self.clone();
        for (&g, c) in &other.coeffs {
            out.add_term(g, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.parent);
        }
        AlgebraElement {
            parent: Arc::clone(&self.parent),
            coeffs: self.coeffs.iter().map(|(&g, c)| (g, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(n.into()))
    }

    /// Convolution `(Σ a_x x)(Σ b_y y) = Σ a_x b_y (xy)`, with `xy` the group
    /// product of the parent table.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        if let Some(out) = self.product_small(other) {
            return Ok(out);
        }
        let g = &self.parent;
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (&x, a) in &self.coeffs {
            for (&y, b) in &other.coeffs {
                *acc.entry(g.mul(x, y)).or_insert_with(BigRational::zero) += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement {
            parent: Arc::clone(g),
            coeffs: acc,
        })
    }

    /// Numerators over the common denominator, when they fit in `i64`.
    fn small_numerators(&self) -> Option<(BigInt, Vec<(usize, i64)>)> {
        let denom = self
            .coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|(&g, c)| (c.numer() * (&denom / c.denom())).to_i64().map(|n| (g, n)))
            .collect::<Option<Vec<_>>>()?;
        Some((denom, nums))
    }

    /// Exact product on machine integers: numerators below `2^31` in absolute
    /// value keep every partial sum of at most `2^60` terms inside `i128`.
    fn product_small(&self, other: &Self) -> Option<Self> {
        const BOUND: i64 = 1 << 31;
        let (da, a) = self.small_numerators()?;
        let (db, b) = other.small_numerators()?;
        if a.iter().chain(&b).any(|&(_, n)| n.abs() >= BOUND) {
            return None;
        }
        let g = &self.parent;
        let mut acc = vec![0i128; g.order()];
        for &(x, ca) in &a {
            for &(y, cb) in &b {
                acc[g.mul(x, y)] += ca as i128 * cb as i128;
            }
        }
        let denom = da * db;
        let coeffs = acc
            .into_iter()
            .enumerate()
            .filter(|&(_, n)| n != 0)
            .map(|(z, n)| (z, BigRational::new(BigInt::from(n), denom.clone())))
            .collect();
        Some(AlgebraElement {
            parent: Arc::clone(g),
            coeffs,
        })
    }

    /// `g · self`, a relabelling of the support.
    pub fn left_mul_element(&self, g: usize) -> Self {
        let group = &self.parent;
        AlgebraElement {
            parent: Arc::clone(group),
            coeffs: self.coeffs.iter().map(|(&x, c)| (group.mul(g, x), c.clone())).collect(),
        }
    }

    /// `self · g`.
    pub fn right_mul_element(&self, g: usize) -> Self {
        let group = &self.parent;
        AlgebraElement {
            parent: Arc::clone(group),
            coeffs: self.coeffs.iter().map(|(&x, c)| (group.mul(x, g), c.clone())).collect(),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&g, c)| format!("{c}*{}", self.parent.element(g)))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
