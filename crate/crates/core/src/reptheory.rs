//! Exact character theory of `G = N ⋊ P`.
//!
//! Complex irreducibles come from the little-groups method: `P` acts freely
//! on the nontrivial characters of `N`, so every irreducible is either one of
//! the `p` lifts `χ_0 ⊗ ρ_j` of a character of `G/N`, or an induced character
//! `θ = Ind_N^G χ` of degree `p`, one per `P`-orbit. Values live in `Q(ζ_p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::covers::GenusTable;
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::galois::ClosureModel;
use crate::group::{GroupTable, Subgroup};
use crate::report::Report;

pub const SCHUR_INDEX_NOTE: &str =
    "Schur indices are not certified; only the Frobenius-Schur indicator is checked";
pub const DIMENSION_LEVEL_NOTE: &str =
    "dimension-level verification: isogeny classes of isotypic components are not checked";

/// Conjugacy classes of a group, with an element-to-class map.
#[derive(Debug, Clone)]
pub struct ClassData {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    order: usize,
}

impl ClassData {
    pub fn new(group: &GroupTable) -> ClassData {
        let classes = group.conjugacy_classes();
        let mut class_of = vec![0; group.order()];
        for (c, members) in classes.iter().enumerate() {
            for &x in members {
                class_of[x] = c;
            }
        }
        ClassData {
            classes,
            class_of,
            order: group.order(),
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Smallest element index of the class.
    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn group_order(&self) -> usize {
        self.order
    }
}

/// A class function, stored class by class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub label: String,
    pub values: Vec<CycloNum>,
}

impl Character {
    /// Value on the identity class (class 0 is always `{1}`).
    pub fn degree(&self) -> BigInt {
        self.values[0]
            .to_integer()
            .expect("character degree is a rational integer")
    }

    pub fn value(&self, class: usize) -> &CycloNum {
        &self.values[class]
    }

    pub fn is_integer_valued(&self) -> bool {
        self.values.iter().all(|v| v.to_integer().is_some())
    }

    pub fn add(&self, other: &Character, label: impl Into<String>) -> Character {
        Character {
            label: label.into(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn norm_is_one(&self, classes: &ClassData) -> bool {
        inner_product(classes, self, self) == CycloNum::one(self.values[0].p())
    }

    pub fn galois_conjugate(&self, a: usize) -> Character {
        Character {
            label: format!("{}^({a})", self.label),
            values: self.values.iter().map(|v| v.galois_conjugate(a)).collect(),
        }
    }
}

/// A `±1` character of `N ≅ Z_2^{p-1}`, given by a functional on the
/// s-basis coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NCharacter {
    pub functional: u32,
}

impl NCharacter {
    pub fn is_trivial(&self) -> bool {
        self.functional == 0
    }

    /// `χ(n) ∈ {1, -1}`; `None` when `n ∉ N`.
    pub fn value(&self, model: &ClosureModel, n: usize) -> Option<i64> {
        let coords = model.n_coords(n)?;
        Some(if (coords & self.functional).count_ones() % 2 == 0 { 1 } else { -1 })
    }

    pub fn kernel(&self, model: &ClosureModel) -> Subgroup {
        let members = model
            .n_elements()
            .iter()
            .enumerate()
            .filter(|(mask, _)| (*mask as u32 & self.functional).count_ones() % 2 == 0)
            .map(|(_, &x)| x);
        let mut bits = fixedbitset::FixedBitSet::with_capacity(model.group().order());
        bits.extend(members);
        Subgroup::from_members(model.group(), bits).expect("kernel of a character is a subgroup")
    }

    /// `n ↦ χ(g n g^-1)`, whose kernel is `g^-1 ker(χ) g`.
    pub fn twist(&self, model: &ClosureModel, g: usize) -> NCharacter {
        let group = model.group();
        let g_inv = group.inv(g);
        let functional = (0..model.p() - 1)
            .filter(|&i| {
                let image = group.conjugate(model.s()[i], g_inv);
                self.value(model, image) == Some(-1)
            })
            .fold(0, |acc, i| acc | 1 << i);
        NCharacter { functional }
    }
}

/// All `2^{p-1}` characters of `N`, indexed by functional.
pub fn characters_of_n(model: &ClosureModel) -> Vec<NCharacter> {
    (0..1u32 << (model.p() - 1))
        .map(|functional| NCharacter { functional })
        .collect()
}

/// `θ(g) = Σ_k χ(σ^k g σ^-k)` on `N`, zero off `N`.
pub fn induce_character(model: &ClosureModel, classes: &ClassData, chi: NCharacter) -> Result<Character> {
    if chi.is_trivial() {
        return Err(Error::TrivialInduction);
    }
    let group = model.group();
    let p = model.p();
    let values = (0..classes.len())
        .map(|c| {
            let g = classes.representative(c);
            if model.n_coords(g).is_none() {
                return CycloNum::zero(p);
            }
            let total: i64 = (0..p)
                .map(|k| {
                    let conj = group.conjugate(g, group.pow(model.sigma(), p - k));
                    chi.value(model, conj).expect("N is normal")
                })
                .sum();
            CycloNum::from_integer(p, total)
        })
        .collect();
    Ok(Character {
        label: format!("Ind(chi[{:0width$b}])", chi.functional, width = p - 1),
        values,
    })
}

/// `χ_0 ⊗ ρ_j` for `j = 0, .., p-1`: value `ζ^{jk}` on `N σ^k`.
pub fn one_dim_characters(model: &ClosureModel, classes: &ClassData) -> Vec<Character> {
    let p = model.p();
    (0..p)
        .map(|j| Character {
            label: format!("rho{j}"),
            values: (0..classes.len())
                .map(|c| {
                    let k = model.quotient_exponent(classes.representative(c));
                    CycloNum::zeta_pow(p, (j * k) as i64)
                })
                .collect(),
        })
        .collect()
}

/// `ψ = Σ_{j=1}^{p-1} χ_0 ⊗ ρ_j`.
pub fn psi(model: &ClosureModel, classes: &ClassData) -> Character {
    let p = model.p();
    let zero = Character {
        label: "psi".into(),
        values: vec![CycloNum::zero(p); classes.len()],
    };
    one_dim_characters(model, classes)
        .iter()
        .skip(1)
        .fold(zero, |acc, rho| acc.add(rho, "psi"))
}

/// `(1/|G|) Σ_C |C| a(C) conj(b(C))`.
pub fn inner_product(classes: &ClassData, a: &Character, b: &Character) -> CycloNum {
    let p = a.values[0].p();
    let mut total = CycloNum::zero(p);
    for c in 0..classes.len() {
        let (x, y) = (&a.values[c], &b.values[c]);
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let size = BigRational::from_integer(classes.size(c).into());
        let term = match (x.rational_part(), y.rational_part()) {
            (Some(u), Some(v)) => CycloNum::from_rational(p, u * v),
            (Some(u), None) => y.conj().scale(u),
            (None, Some(v)) => x.scale(v),
            (None, None) => x * &y.conj(),
        };
        total = &total + &term.scale(&size);
    }
    total.scale(&BigRational::new(One::one(), classes.group_order().into()))
}

/// `(1/|G|) Σ_g χ(g^2)`.
pub fn frobenius_schur(group: &GroupTable, classes: &ClassData, chi: &Character) -> CycloNum {
    let p = chi.values[0].p();
    let mut counts = vec![0usize; classes.len()];
    for g in 0..group.order() {
        counts[classes.class_of(group.mul(g, g))] += 1;
    }
    let total = counts
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .fold(CycloNum::zero(p), |acc, (c, &n)| {
            &acc + &chi.values[c].scale(&BigRational::from_integer(n.into()))
        });
    total.scale(&BigRational::new(One::one(), group.order().into()))
}

/// Complex and rational irreducibles of `G`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub p: usize,
    pub classes: ClassData,
    /// `ρ_0, .., ρ_{p-1}, θ_1, .., θ_m`.
    pub irreducibles: Vec<Character>,
    /// `ρ_0, ψ, θ_1, .., θ_m`.
    pub rational: Vec<Character>,
}

impl CharacterTable {
    pub fn build(model: &ClosureModel) -> Result<CharacterTable> {
        let classes = ClassData::new(model.group());
        let mut irreducibles = one_dim_characters(model, &classes);
        let mut thetas = Vec::with_capacity(model.m());
        for (j, r) in model.representatives().into_iter().enumerate() {
            let mut theta = induce_character(model, &classes, NCharacter { functional: r.functional })?;
            theta.label = format!("theta{}", j + 1);
            thetas.push(theta);
        }
        irreducibles.extend(thetas.iter().cloned());
        let mut rational = vec![irreducibles[0].clone(), psi(model, &classes)];
        rational.extend(thetas);
        Ok(CharacterTable {
            p: model.p(),
            classes,
            irreducibles,
            rational,
        })
    }

    pub fn summary(&self, group: &GroupTable) -> CharacterTableSummary {
        let classes = (0..self.classes.len())
            .map(|c| ClassSummary {
                representative: group.element(self.classes.representative(c)).to_string(),
                size: self.classes.size(c).to_string(),
            })
            .collect();
        let describe = |chi: &Character| CharacterSummary {
            label: chi.label.clone(),
            degree: chi.degree().to_string(),
            values: chi.values.iter().map(ToString::to_string).collect(),
        };
        CharacterTableSummary {
            classes,
            irreducibles: self.irreducibles.iter().map(describe).collect(),
            rational: self.rational.iter().map(describe).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub representative: String,
    pub size: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterSummary {
    pub label: String,
    pub degree: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTableSummary {
    pub classes: Vec<ClassSummary>,
    pub irreducibles: Vec<CharacterSummary>,
    pub rational: Vec<CharacterSummary>,
}

/// Counts, exact orthonormality, degree sum, rational inventory and
/// Frobenius–Schur indicators.
pub fn verify_irreducible_inventory(model: &ClosureModel) -> Result<Report> {
    let table = CharacterTable::build(model)?;
    Ok(verify_table(model, &table))
}

pub fn verify_table(model: &ClosureModel, table: &CharacterTable) -> Report {
    let p = model.p();
    let m = model.m();
    let order = model.group().order();
    let classes = &table.classes;
    let irr = &table.irreducibles;
    let mut report = Report::new();

    let linear = irr.iter().filter(|c| c.degree() == BigInt::one()).count();
    let big = irr.iter().filter(|c| c.degree() == BigInt::from(p)).count();
    report.push(
        "inventory: p linear + m of degree p",
        linear == p && big == m && irr.len() == p + m,
        format!("{linear} linear, {big} of degree {p}, m = {m}"),
    );
    report.push(
        "irreducible count = class count",
        irr.len() == classes.len(),
        format!("{} characters, {} classes", irr.len(), classes.len()),
    );

    let mut orthonormal = true;
    for (a, x) in irr.iter().enumerate() {
        for (b, y) in irr.iter().enumerate().skip(a) {
            let expected = CycloNum::from_integer(p, (a == b) as i64);
            if inner_product(classes, x, y) != expected {
                orthonormal = false;
            }
        }
    }
    report.push("orthonormality", orthonormal, "<chi_a, chi_b> = delta_ab exactly");

    let degree_sum: BigInt = irr.iter().map(|c| c.degree() * c.degree()).sum();
    report.push(
        "sum of squared degrees = |G|",
        degree_sum == BigInt::from(order),
        format!("{degree_sum} vs {order}"),
    );

    let psi = &table.rational[1];
    report.push(
        "psi integer-valued of degree p-1",
        psi.is_integer_valued() && psi.degree() == BigInt::from(p - 1),
        format!("degree {}", psi.degree()),
    );
    let rho1 = &irr[1];
    let galois_orbit = (1..p).all(|a| rho1.galois_conjugate(a).values == irr[a].values);
    report.push(
        "psi is a Galois-orbit sum",
        galois_orbit,
        "rho_a = rho_1 under zeta -> zeta^a",
    );
    let thetas = &table.rational[2..];
    report.push(
        "theta_i integer-valued of degree p",
        thetas
            .iter()
            .all(|t| t.is_integer_valued() && t.degree() == BigInt::from(p)),
        format!("{} characters", thetas.len()),
    );
    report.push(
        "theta_i vanish off N",
        thetas.iter().all(|t| {
            (0..classes.len())
                .all(|c| model.n_coords(classes.representative(c)).is_some() || t.values[c].is_zero())
        }),
        "induced from N",
    );
    let one = CycloNum::one(p);
    let indicators_ok = thetas
        .iter()
        .all(|t| frobenius_schur(model.group(), classes, t) == one);
    report.push(
        "Frobenius-Schur indicator of theta_i = +1",
        indicators_ok,
        SCHUR_INDEX_NOTE,
    );
    report
}

/// Dimensions of the isotypic components of `JZ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotypicDimensions {
    pub p: usize,
    pub j_rho0: u64,
    pub j_psi: u64,
    pub b_theta: Vec<u64>,
    pub j_theta: Vec<u64>,
    pub total: u64,
    pub g_z: u64,
    pub n_psi: u64,
    pub n_theta: u64,
}

impl IsotypicDimensions {
    pub fn report(&self) -> Report {
        let mut report = Report::new();
        report.push(
            "sum of isotypic dimensions = g(Z)",
            self.total == self.g_z,
            format!(
                "{} + {} + {} = {} vs g(Z) = {}",
                self.j_rho0,
                self.j_psi,
                self.j_theta.iter().map(u64::to_string).collect::<Vec<_>>().join(" + "),
                self.total,
                self.g_z
            ),
        );
        report.push(
            "J_theta = p * B_theta",
            self.b_theta
                .iter()
                .zip(&self.j_theta)
                .all(|(b, j)| *j == self.p as u64 * b),
            DIMENSION_LEVEL_NOTE,
        );
        report.push(
            "n_psi = 1, n_theta = p",
            self.n_psi == 1 && self.n_theta == self.p as u64,
            "n = dim V / m with all Schur indices taken as 1",
        );
        report
    }
}

pub fn isotypic_dimensions(table: &GenusTable, p: usize) -> IsotypicDimensions {
    let j_theta: Vec<u64> = table.dim_p.iter().map(|d| p as u64 * d).collect();
    let total = table.g_x + j_theta.iter().sum::<u64>();
    IsotypicDimensions {
        p,
        j_rho0: 0,
        j_psi: table.g_x,
        b_theta: table.dim_p.clone(),
        j_theta,
        total,
        g_z: table.g_z,
        // n = dim V / m with every Schur index m taken to be 1; psi counts
        // as one rational irreducible of Q-dimension p-1 spread over Q(ζ).
        n_psi: 1,
        n_theta: p as u64,
    }
}

/// Column orthogonality `Σ_χ χ(a) conj χ(b) = δ_ab |C_G(a)|`, exactly.
pub fn column_orthogonality(table: &CharacterTable) -> bool {
    let classes = &table.classes;
    let p = table.p;
    for a in 0..classes.len() {
        for b in a..classes.len() {
            let total = table.irreducibles.iter().fold(CycloNum::zero(p), |acc, chi| {
                &acc + &(&chi.values[a] * &chi.values[b].conj())
            });
            let expected = if a == b {
                (classes.group_order() / classes.size(a)) as i64
            } else {
                0
            };
            if total != CycloNum::from_integer(p, expected) {
                return false;
            }
        }
    }
    true
}

/// `Σ_g χ(g) = 0` for every nontrivial irreducible.
pub fn weighted_row_sums_vanish(table: &CharacterTable) -> bool {
    let classes = &table.classes;
    table.irreducibles.iter().skip(1).all(|chi| {
        (0..classes.len())
            .fold(CycloNum::zero(table.p), |acc, c| {
                &acc + &chi.values[c].scale(&BigRational::from_integer(classes.size(c).into()))
            })
            .is_zero()
    })
}

/// Degrees as plain integers, for display.
pub fn degrees(table: &CharacterTable) -> Vec<u64> {
    table
        .irreducibles
        .iter()
        .map(|c| c.degree().to_u64().unwrap_or(0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{genus_closed_forms, CoverParams};
    use crate::galois::build_closure_model;
    use std::collections::BTreeSet;

    #[test]
    fn n_characters_and_kernels() {
        let model = build_closure_model(3).unwrap();
        let chars = characters_of_n(&model);
        assert_eq!(chars.len(), 4);
        assert_eq!(chars[0].kernel(&model), model.n().clone());
        let kernels: BTreeSet<u32> = chars[1..]
            .iter()
            .map(|c| model.functional_of(&c.kernel(&model)))
            .collect();
        let maximal: BTreeSet<u32> = model.maximal_subgroups().iter().map(|m| m.functional).collect();
        assert_eq!(kernels, maximal);
        for c in &chars[1..] {
            assert_eq!(c.kernel(&model).order(), 2);
        }
    }

    #[test]
    fn p_action_on_characters_matches_subgroup_orbits() {
        for p in [3, 5, 7] {
            let model = build_closure_model(p).unwrap();
            let subs = model.maximal_subgroups();
            let sigma = model.sigma();
            for orbit in model.orbits() {
                let members: BTreeSet<u32> = orbit.iter().map(|&i| subs[i].functional).collect();
                let start = NCharacter { functional: subs[orbit[0]].functional };
                let mut seen = BTreeSet::new();
                let mut chi = start;
                loop {
                    seen.insert(chi.functional);
                    assert_eq!(
                        chi.twist(&model, sigma).kernel(&model),
                        chi.kernel(&model).conjugate(sigma)
                    );
                    chi = chi.twist(&model, sigma);
                    if chi == start {
                        break;
                    }
                }
                assert_eq!(seen, members, "p = {p}");
                assert_eq!(seen.len(), p);
            }
        }
    }

    #[test]
    fn induced_character_p3() {
        let model = build_closure_model(3).unwrap();
        let classes = ClassData::new(model.group());
        let chi = NCharacter { functional: model.representative(1).unwrap().functional };
        let theta = induce_character(&model, &classes, chi).unwrap();
        assert_eq!(theta.degree(), BigInt::from(3));
        let s1 = classes.class_of(model.s()[0]);
        assert_eq!(theta.values[s1], CycloNum::from_integer(3, -1));
        let sigma = classes.class_of(model.sigma());
        assert!(theta.values[sigma].is_zero());
        assert!(theta.norm_is_one(&classes));
        assert!(matches!(
            induce_character(&model, &classes, NCharacter { functional: 0 }),
            Err(Error::TrivialInduction)
        ));
    }

    #[test]
    fn one_dimensional_characters() {
        let model = build_closure_model(5).unwrap();
        let classes = ClassData::new(model.group());
        let rhos = one_dim_characters(&model, &classes);
        assert_eq!(rhos.len(), 5);
        assert!(rhos[0].values.iter().all(|v| *v == CycloNum::one(5)));
        assert!(rhos[0].norm_is_one(&classes));
        let psi = psi(&model, &classes);
        assert_eq!(psi.values[classes.class_of(model.sigma())], CycloNum::from_integer(5, -1));
        assert_eq!(psi.values[classes.class_of(model.s()[2])], CycloNum::from_integer(5, 4));
    }

    #[test]
    fn inventories() {
        for (p, degrees_expected) in [(3, vec![1, 1, 1, 3]), (5, vec![1, 1, 1, 1, 1, 5, 5, 5])] {
            let model = build_closure_model(p).unwrap();
            let table = CharacterTable::build(&model).unwrap();
            assert_eq!(degrees(&table), degrees_expected);
            let report = verify_table(&model, &table);
            assert!(report.passed(), "{:?}", report.first_failure());
            assert!(column_orthogonality(&table));
            assert!(weighted_row_sums_vanish(&table));
        }
    }

    #[test]
    fn corrupted_character_fails_orthonormality() {
        let model = build_closure_model(3).unwrap();
        let mut table = CharacterTable::build(&model).unwrap();
        let last = table.irreducibles.len() - 1;
        table.irreducibles[last].values[1] = CycloNum::from_integer(3, 7);
        assert!(!verify_table(&model, &table).passed());
        assert!(!column_orthogonality(&table));
    }

    #[test]
    fn isotypic_bookkeeping() {
        for (p, beta, expected) in [(3, 4, 5), (5, 3, 17), (3, 3, 1)] {
            let model = build_closure_model(p).unwrap();
            let table = genus_closed_forms(&CoverParams::new(p, beta).unwrap(), model.m()).unwrap();
            let dims = isotypic_dimensions(&table, p);
            assert_eq!(dims.total, expected);
            assert!(dims.report().passed());
        }
    }

    #[test]
    fn summary_has_exact_strings() {
        let model = build_closure_model(3).unwrap();
        let table = CharacterTable::build(&model).unwrap();
        let summary = table.summary(model.group());
        assert_eq!(summary.classes[0].representative, "()");
        assert_eq!(summary.classes[0].size, "1");
        assert!(summary.irreducibles[1].values.iter().any(|v| v.contains('ζ')));
    }
}
