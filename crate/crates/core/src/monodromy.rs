//! Branch data: product-one generating tuples of local monodromies.
//!
//! Text format (1-based cycle notation, `#` starts a comment):
//!
//! ```text
//! p=3 beta=4
//! (1,2,3)(4,5,6)
//! ...
//! ```
//!
//! An odd-`p` datum has `beta` lines; a Klein datum (`p=2`) has `2 beta`.

use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::galois::ClosureModel;
use crate::group::GroupTable;
use crate::klein::KleinModel;
use crate::perm::Permutation;
use crate::report::Report;

pub const DEFAULT_BETA_CAP: usize = 12;

#[derive(Debug, Clone)]
pub struct MonodromyDatum {
    group: Arc<GroupTable>,
    tuple: Vec<usize>,
    p: usize,
    beta: usize,
}

impl PartialEq for MonodromyDatum {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
            && self.tuple == other.tuple
            && self.p == other.p
            && self.beta == other.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub beta_cap: usize,
    /// Pin the first local monodromy to `σ` itself.
    pub first_is_sigma: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            beta_cap: DEFAULT_BETA_CAP,
            first_is_sigma: false,
        }
    }
}

impl MonodromyDatum {
    /// Unvalidated; see [`validate_monodromy`].
    pub fn new(group: Arc<GroupTable>, p: usize, beta: usize, tuple: Vec<usize>) -> Self {
        MonodromyDatum {
            group,
            tuple,
            p,
            beta,
        }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn tuple(&self) -> &[usize] {
        &self.tuple
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn is_klein(&self) -> bool {
        self.p == 2
    }

    pub fn cycle_strings(&self) -> Vec<String> {
        self.tuple
            .iter()
            .map(|&g| self.group.element(g).to_string())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p={} beta={}\n", self.p, self.beta);
        for line in self.cycle_strings() {
            let _ = writeln!(out, "{line}");
        }
        out
    }

    /// Parses the text format against `group`; every permutation must be an
    /// element of it.
    pub fn parse(text: &str, group: &Arc<GroupTable>) -> Result<MonodromyDatum> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty monodromy file".into()))?;
        let (p, beta) = parse_header(header)?;
        if group.degree() != 2 * p {
            return Err(Error::Parse(format!(
                "p={p} needs degree {}, group has degree {}",
                2 * p,
                group.degree()
            )));
        }
        let mut tuple = Vec::new();
        for line in lines {
            let perm = Permutation::parse_cycles(line, group.degree())?;
            let idx = group
                .index_of(&perm)
                .ok_or_else(|| Error::Parse(format!("{line} is not an element of the group")))?;
            tuple.push(idx);
        }
        let expected = if p == 2 { 2 * beta } else { beta };
        if tuple.len() != expected {
            return Err(Error::Parse(format!(
                "expected {expected} local monodromies, found {}",
                tuple.len()
            )));
        }
        Ok(MonodromyDatum::new(Arc::clone(group), p, beta, tuple))
    }
}

fn parse_header(header: &str) -> Result<(usize, usize)> {
    let mut p = None;
    let mut beta = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header field {field:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Error::Parse(format!("bad number in {field:?}")))?;
        match key {
            "p" => p = Some(value),
            "beta" => beta = Some(value),
            _ => return Err(Error::Parse(format!("unknown header key {key:?}"))),
        }
    }
    match (p, beta) {
        (Some(p), Some(beta)) => Ok((p, beta)),
        _ => Err(Error::Parse(format!("header needs p= and beta=: {header:?}"))),
    }
}

fn check_beta(beta: usize, cap: usize) -> Result<()> {
    if beta < 3 || beta > cap {
        return Err(Error::BetaOutOfRange {
            beta,
            min: 3,
            max: cap,
        });
    }
    Ok(())
}

/// Lexicographically first valid branch datum for `(p, beta)`.
pub fn find_monodromy(model: &ClosureModel, beta: usize) -> Result<MonodromyDatum> {
    find_monodromy_with(model, beta, &SearchOptions::default())
}

pub fn find_monodromy_with(
    model: &ClosureModel,
    beta: usize,
    options: &SearchOptions,
) -> Result<MonodromyDatum> {
    find_monodromy_tuples(model, beta, options, 1)?
        .into_iter()
        .next()
        .ok_or(Error::NoBranchDatum { p: model.p(), beta })
}

/// The first `limit` valid data in lexicographic order of element indices.
///
/// Candidates are the order-`p` elements outside `N`. The last entry is
/// forced by the product-one condition, and the subgroup generated by the
/// whole tuple equals the one generated by the prefix, so the prefix closure
/// is carried along the search.
pub fn find_monodromy_tuples(
    model: &ClosureModel,
    beta: usize,
    options: &SearchOptions,
    limit: usize,
) -> Result<Vec<MonodromyDatum>> {
    check_beta(beta, options.beta_cap)?;
    let g = model.group();
    let p = model.p();
    let candidates: Vec<usize> = (0..g.order())
        .filter(|&x| !model.n().contains(x) && g.element_order(x) == p)
        .collect();
    let mut is_candidate = vec![false; g.order()];
    for &c in &candidates {
        is_candidate[c] = true;
    }

    struct Search<'a> {
        g: &'a GroupTable,
        candidates: &'a [usize],
        is_candidate: &'a [bool],
        free: usize,
        limit: usize,
        first: Option<usize>,
        prefix: Vec<usize>,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn run(&mut self, product: usize, closure: &FixedBitSet) {
            if self.found.len() >= self.limit {
                return;
            }
            if self.prefix.len() == self.free {
                let last = self.g.inv(product);
                if self.is_candidate[last] && closure.count_ones(..) == self.g.order() {
                    let mut tuple = self.prefix.clone();
                    tuple.push(last);
                    self.found.push(tuple);
                }
                return;
            }
            let options: Vec<usize> = match (self.prefix.is_empty(), self.first) {
                (true, Some(first)) => vec![first],
                _ => self.candidates.to_vec(),
            };
            for x in options {
                self.prefix.push(x);
                let next = if closure.contains(x) {
                    closure.clone()
                } else {
                    self.g.closure_of(&self.prefix)
                };
                self.run(self.g.mul(product, x), &next);
                self.prefix.pop();
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }

    let mut start = FixedBitSet::with_capacity(g.order());
    start.insert(g.identity());
    let mut search = Search {
        g,
        candidates: &candidates,
        is_candidate: &is_candidate,
        free: beta - 1,
        limit,
        first: options.first_is_sigma.then_some(model.sigma()),
        prefix: Vec::with_capacity(beta),
        found: Vec::new(),
    };
    search.run(g.identity(), &start);
    if search.found.is_empty() {
        return Err(Error::NoBranchDatum { p, beta });
    }
    Ok(search
        .found
        .into_iter()
        .map(|t| MonodromyDatum::new(Arc::clone(g), p, beta, t))
        .collect())
}

/// Checks every invariant of a branch datum. Odd `p` data are checked against
/// the block structure `{i, p+i}` of the `2p`-point model; Klein data against
/// the values `{r, rs}`.
pub fn validate_monodromy(datum: &MonodromyDatum) -> Report {
    if datum.is_klein() {
        return validate_klein(datum);
    }
    let g = datum.group();
    let p = datum.p;
    let tuple = &datum.tuple;
    let mut report = Report::new();

    report.push(
        "beta >= 3",
        datum.beta >= 3 && tuple.len() == datum.beta,
        format!("beta = {}, {} entries", datum.beta, tuple.len()),
    );
    report.push(
        "product = 1",
        g.product(tuple) == g.identity(),
        format!("product = {}", g.element(g.product(tuple))),
    );
    let generated = g.closure_of(tuple).count_ones(..);
    report.push(
        "tuple generates G",
        generated == g.order(),
        format!("generated order {generated} of {}", g.order()),
    );
    report.push(
        "each entry has order p",
        tuple.iter().all(|&x| g.element_order(x) == p),
        format!("orders {:?}", tuple.iter().map(|&x| g.element_order(x)).collect::<Vec<_>>()),
    );
    let block_shift = |x: usize| {
        let e = g.element(x);
        let shift = e.apply(0) % p;
        let consistent = (0..2 * p).all(|i| e.apply(i) % p == (i + shift) % p);
        (shift, consistent)
    };
    let shifts: Vec<(usize, bool)> = tuple.iter().map(|&x| block_shift(x)).collect();
    report.push(
        "each entry outside N",
        shifts.iter().all(|&(k, ok)| ok && k != 0),
        "every entry moves the blocks {i, p+i}",
    );
    report.push(
        "cycle type {p, p}",
        tuple
            .iter()
            .all(|&x| g.element(x).cycle_type() == vec![p, p]),
        "each entry is a product of two disjoint p-cycles",
    );
    report.push(
        "each entry even",
        tuple.iter().all(|&x| g.element(x).is_even()),
        "entries lie in A_2p",
    );
    let exponents: Vec<usize> = shifts.iter().map(|&(k, _)| k).collect();
    report.push(
        "images in G/N nontrivial",
        exponents.iter().all(|&k| k != 0),
        format!("exponents {exponents:?}"),
    );
    report.push(
        "images in G/N sum to 0",
        exponents.iter().sum::<usize>() % p == 0,
        format!("sum = {} mod {p}", exponents.iter().sum::<usize>() % p),
    );
    report
}

fn validate_klein(datum: &MonodromyDatum) -> Report {
    let g = datum.group();
    let mut report = Report::new();
    let model = KleinModel::new();
    let allowed = |x: usize| g.element(x) == model.group().element(model.r())
        || g.element(x) == model.group().element(model.rs());
    report.push(
        "beta >= 3",
        datum.beta >= 3 && datum.tuple.len() == 2 * datum.beta,
        format!("beta = {}, {} entries", datum.beta, datum.tuple.len()),
    );
    report.push(
        "product = 1",
        g.product(&datum.tuple) == g.identity(),
        format!("product = {}", g.element(g.product(&datum.tuple))),
    );
    report.push(
        "tuple generates G",
        g.generates_whole(&datum.tuple),
        "closure is the Klein group",
    );
    report.push(
        "entries in {r, rs}",
        datum.tuple.iter().all(|&x| allowed(x)),
        "Y -> Y_s is étale",
    );
    report
}

/// Klein branch data for `Y_s -> P1` ramified over `2 beta` points.
///
/// The first `2 beta_r` entries are `rs` (the branch points of `Y_r -> P1`,
/// where the monodromy leaves `<r>`), followed by `2 beta_rs` entries `r`.
pub fn find_klein_monodromy(
    model: &KleinModel,
    beta_r: usize,
    beta_rs: usize,
) -> Result<MonodromyDatum> {
    if beta_r == 0 || beta_rs == 0 {
        return Err(Error::DegenerateKlein { beta_r, beta_rs });
    }
    let beta = beta_r + beta_rs;
    check_beta(beta, usize::MAX)?;
    let mut tuple = vec![model.rs(); 2 * beta_r];
    tuple.extend(std::iter::repeat(model.r()).take(2 * beta_rs));
    Ok(MonodromyDatum::new(Arc::clone(model.group()), 2, beta, tuple))
}
