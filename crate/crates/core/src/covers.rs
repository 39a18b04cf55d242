//! Genera of the quotients `Z/K`.
//!
//! Two independent routes: the Riemann–Hurwitz count over cycle lengths of
//! coset actions of the local monodromies, and closed-form expressions in
//! `(p, beta)`. Everything is exact integer arithmetic.

use crate::error::{Error, Result};
use crate::galois::{is_prime, ClosureModel};
use crate::group::Subgroup;
use crate::klein::KleinModel;
use crate::monodromy::{find_klein_monodromy, MonodromyDatum};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverParams {
    pub p: usize,
    pub beta: usize,
}

impl CoverParams {
    pub fn new(p: usize, beta: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::KleinCase);
        }
        if beta < 3 {
            return Err(Error::BetaOutOfRange {
                beta,
                min: 3,
                max: usize::MAX,
            });
        }
        Ok(CoverParams { p, beta })
    }
}

/// Genera of `X = Z/N`, `Y_i = Z/R_i`, `Z`, `T = Z/P`, with the Prym
/// dimensions `g(Y_i) - g(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTable {
    pub p: usize,
    pub beta: usize,
    pub g_x: u64,
    pub g_y: Vec<u64>,
    pub g_z: u64,
    pub g_t: u64,
    pub dim_p: Vec<u64>,
    pub dim_jt: u64,
}

impl GenusTable {
    pub fn m(&self) -> usize {
        self.g_y.len()
    }

    fn assemble(p: usize, beta: usize, g_x: i64, g_y: Vec<i64>, g_z: i64, g_t: i64) -> Result<Self> {
        let negative = |name: &str, v: i64| {
            if v < 0 {
                Err(Error::NegativeGenus(format!(
                    "{name} = {v} for p = {p}, beta = {beta}"
                )))
            } else {
                Ok(v as u64)
            }
        };
        let g_x = negative("g(X)", g_x)?;
        let g_y = g_y
            .into_iter()
            .map(|v| negative("g(Y)", v))
            .collect::<Result<Vec<_>>>()?;
        let g_z = negative("g(Z)", g_z)?;
        let g_t = negative("g(T)", g_t)?;
        let dim_p = g_y
            .iter()
            .map(|&y| negative("dim P(Y/X)", y as i64 - g_x as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok(GenusTable {
            p,
            beta,
            g_x,
            g_y,
            g_z,
            g_t,
            dim_p,
            dim_jt: g_t,
        })
    }
}

/// Genus of `Z/sub` from `2g - 2 = -2d + Σ_b Σ_cycles (len - 1)`, where
/// `d = [G : sub]` and the cycles are those of each local monodromy acting on
/// the right cosets of `sub`.
pub fn genus_by_coset_action(datum: &MonodromyDatum, sub: &Subgroup) -> Result<u64> {
    if !std::sync::Arc::ptr_eq(datum.group(), sub.parent()) {
        return Err(Error::ParentMismatch);
    }
    let space = sub.coset_space();
    let d = space.len() as i64;
    let ramification: i64 = datum
        .tuple()
        .iter()
        .map(|&g| d - space.action(g).cycle_count() as i64)
        .sum();
    let twice = ramification - 2 * d + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Internal(format!(
            "Euler characteristic gives 2g = {twice} for a cover of degree {d}"
        )));
    }
    Ok((twice / 2) as u64)
}

/// Sorted cycle lengths of each local monodromy on the cosets of `sub`.
pub fn ramification_profile(datum: &MonodromyDatum, sub: &Subgroup) -> Vec<Vec<usize>> {
    let space = sub.coset_space();
    datum
        .tuple()
        .iter()
        .map(|&g| space.action(g).cycle_type())
        .collect()
}

/// Closed forms:
/// `g(X) = (p-1)(beta-2)/2`, `g(Y_i) = (p-1)(beta-2) - 1`,
/// `g(Z) = 2^{p-2}(p-1)beta - (p 2^{p-1} - 1)`,
/// `g(T) = m((p-1)beta/2 - p)`.
pub fn genus_closed_forms(params: &CoverParams, m: usize) -> Result<GenusTable> {
    let p = params.p as i64;
    let beta = params.beta as i64;
    if (m as i64) * p != (1i64 << (p - 1)) - 1 {
        return Err(Error::Internal(format!("m = {m} inconsistent with p = {p}")));
    }
    let g_x = (p - 1) * (beta - 2) / 2;
    let g_y = (p - 1) * (beta - 2) - 1;
    let g_z = (1i64 << (p - 2)) * (p - 1) * beta - (p * (1i64 << (p - 1)) - 1);
    let g_t = m as i64 * ((p - 1) * beta / 2 - p);
    GenusTable::assemble(params.p, params.beta, g_x, vec![g_y; m], g_z, g_t)
}

/// Genus table computed purely from coset actions.
pub fn genus_table_by_oracle(model: &ClosureModel, datum: &MonodromyDatum) -> Result<GenusTable> {
    let g_x = genus_by_coset_action(datum, model.n())?;
    let g_y = model
        .representatives()
        .iter()
        .map(|r| genus_by_coset_action(datum, &r.subgroup))
        .collect::<Result<Vec<_>>>()?;
    let g_z = genus_by_coset_action(datum, &Subgroup::trivial(model.group()))?;
    let g_t = genus_by_coset_action(datum, model.cyclic())?;
    GenusTable::assemble(
        model.p(),
        datum.beta(),
        g_x as i64,
        g_y.into_iter().map(|v| v as i64).collect(),
        g_z as i64,
        g_t as i64,
    )
}

/// Oracle against closed forms for every quotient, plus étaleness and the
/// ramification profile of `T -> P1`.
pub fn verify_genera(model: &ClosureModel, datum: &MonodromyDatum) -> Result<Report> {
    let p = model.p();
    let params = CoverParams::new(p, datum.beta())?;
    let closed = genus_closed_forms(&params, model.m())?;
    let oracle = genus_table_by_oracle(model, datum)?;
    let mut report = Report::new();
    let mut compare = |name: String, oracle: u64, closed: u64| {
        report.push(name, oracle == closed, format!("oracle {oracle}, closed form {closed}"));
    };
    compare("g(X)".into(), oracle.g_x, closed.g_x);
    for (j, (&o, &c)) in oracle.g_y.iter().zip(&closed.g_y).enumerate() {
        compare(format!("g(Y{})", j + 1), o, c);
    }
    compare("g(Z)".into(), oracle.g_z, closed.g_z);
    compare("g(T)".into(), oracle.g_t, closed.g_t);
    let base = genus_by_coset_action(datum, &Subgroup::whole(model.group()))?;
    compare("g(Z/G)".into(), base, 0);

    report.push(
        "g(Z) >= g(Yi) >= g(X)",
        oracle.g_y.iter().all(|&y| oracle.g_z >= y && y >= oracle.g_x),
        "genus decreases along Z -> Yi -> X",
    );

    let trivial = Subgroup::trivial(model.group());
    report.push(
        "Z -> X étale",
        verify_etale(datum, model.n(), &trivial)?,
        "cycle counts scale by the degree 2^(p-1)",
    );
    let mut all_etale = true;
    for r in model.representatives() {
        all_etale &= verify_etale(datum, model.n(), &r.subgroup)?;
    }
    report.push("Yi -> X étale", all_etale, "for every representative R_j");
    report.push(
        "X -> P1 ramified",
        !verify_etale(datum, &Subgroup::whole(model.group()), model.n())?,
        "totally ramified over the branch values",
    );

    let m = model.m();
    let mut expected = vec![p; m];
    expected.push(1);
    let profile = ramification_profile(datum, model.cyclic());
    report.push(
        "T -> P1: m cycles of length p and one fixed point per branch value",
        profile.iter().all(|c| c == &expected),
        format!("profile {:?}", profile.first().cloned().unwrap_or_default()),
    );
    Ok(report)
}

/// `[big : small] * #cycles(big) = #cycles(small)` for every local monodromy,
/// i.e. `Z/small -> Z/big` is unramified.
pub fn verify_etale(datum: &MonodromyDatum, big: &Subgroup, small: &Subgroup) -> Result<bool> {
    if !small.is_subgroup_of(big)? {
        return Err(Error::NotASubgroup(
            "the smaller group is not contained in the larger".into(),
        ));
    }
    let relative = big.order() / small.order();
    let big_space = big.coset_space();
    let small_space = small.coset_space();
    Ok(datum.tuple().iter().all(|&g| {
        small_space.action(g).cycle_count() == relative * big_space.action(g).cycle_count()
    }))
}

/// `Σ dim P(Yi/X) = g(T)`, `g(Z) = g(X) + p Σ dim P(Yi/X)`, and all Prym
/// dimensions equal.
pub fn verify_dimension_identities(table: &GenusTable, p: usize) -> Report {
    let total: u64 = table.dim_p.iter().sum();
    let mut report = Report::new();
    report.push(
        "Σ dim P(Yi/X) = dim JT",
        total == table.dim_jt,
        format!("{total} = {}", table.dim_jt),
    );
    report.push(
        "g(Z) = g(X) + p Σ dim P(Yi/X)",
        table.g_z == table.g_x + p as u64 * total,
        format!("{} = {} + {p}·{total}", table.g_z, table.g_x),
    );
    report.push(
        "dim P(Yi/X) all equal",
        table.dim_p.windows(2).all(|w| w[0] == w[1]),
        format!("{:?}", table.dim_p),
    );
    report
}

/// Genera of the curves over `P1` for the Klein group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KleinGenera {
    pub g_y: u64,
    pub g_ys: u64,
    pub g_yr: u64,
    pub g_yrs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleinGenusTable {
    pub beta_r: usize,
    pub beta_rs: usize,
    pub closed: KleinGenera,
    pub oracle: KleinGenera,
    /// `dim P(Y/Y_s) = g(Y) - g(Y_s)`.
    pub dim_prym: u64,
    pub ys_etale: bool,
}

impl KleinGenusTable {
    pub fn report(&self) -> Report {
        let mut report = Report::new();
        let pairs = [
            ("g(Y) = 2beta - 3", self.oracle.g_y, self.closed.g_y),
            ("g(Y_s) = beta - 1", self.oracle.g_ys, self.closed.g_ys),
            ("g(Y_r) = beta_r - 1", self.oracle.g_yr, self.closed.g_yr),
            ("g(Y_rs) = beta_rs - 1", self.oracle.g_yrs, self.closed.g_yrs),
        ];
        for (name, oracle, closed) in pairs {
            report.push(name, oracle == closed, format!("oracle {oracle}, closed form {closed}"));
        }
        report.push(
            "dim P(Y/Y_s) = g(Y_r) + g(Y_rs)",
            self.dim_prym == self.closed.g_yr + self.closed.g_yrs,
            format!("{} = {} + {}", self.dim_prym, self.closed.g_yr, self.closed.g_yrs),
        );
        report.push("Y -> Y_s étale", self.ys_etale, "no local monodromy equals s");
        report
    }
}

pub fn klein_genus_table(beta_r: usize, beta_rs: usize) -> Result<KleinGenusTable> {
    let model = KleinModel::new();
    let datum = find_klein_monodromy(&model, beta_r, beta_rs)?;
    let beta = (beta_r + beta_rs) as u64;
    let closed = KleinGenera {
        g_y: 2 * beta - 3,
        g_ys: beta - 1,
        g_yr: beta_r as u64 - 1,
        g_yrs: beta_rs as u64 - 1,
    };
    let trivial = Subgroup::trivial(model.group());
    let oracle = KleinGenera {
        g_y: genus_by_coset_action(&datum, &trivial)?,
        g_ys: genus_by_coset_action(&datum, &model.subgroup(model.s()))?,
        g_yr: genus_by_coset_action(&datum, &model.subgroup(model.r()))?,
        g_yrs: genus_by_coset_action(&datum, &model.subgroup(model.rs()))?,
    };
    Ok(KleinGenusTable {
        beta_r,
        beta_rs,
        closed,
        oracle,
        dim_prym: closed.g_y - closed.g_ys,
        ys_etale: verify_etale(&datum, &model.subgroup(model.s()), &trivial)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{build_closure_model, orbit_count};
    use crate::monodromy::find_monodromy;

    #[test]
    fn closed_forms_spot_values() {
        let t = genus_closed_forms(&CoverParams::new(3, 4).unwrap(), 1).unwrap();
        assert_eq!((t.g_x, t.g_y[0], t.g_z, t.g_t), (2, 3, 5, 1));
        let t = genus_closed_forms(&CoverParams::new(5, 3).unwrap(), 3).unwrap();
        assert_eq!((t.g_x, t.g_y.clone(), t.g_z, t.g_t), (2, vec![3; 3], 17, 3));
        let t = genus_closed_forms(&CoverParams::new(3, 3).unwrap(), 1).unwrap();
        assert_eq!((t.g_x, t.g_y[0], t.g_z, t.g_t), (1, 1, 1, 0));
        assert_eq!(t.dim_p, vec![0]);
    }

    #[test]
    fn p7_beta3_by_hand() {
        // g(X) = 3·1, g(Y) = 6·1 - 1, dim P = 2, g(T) = 9·(9 - 7)
        let t = genus_closed_forms(&CoverParams::new(7, 3).unwrap(), orbit_count(7)).unwrap();
        assert_eq!((t.g_x, t.g_y[0], t.dim_p[0], t.g_t), (3, 5, 2, 18));
        assert_eq!(t.dim_p.iter().sum::<u64>(), 18);
        assert!(verify_dimension_identities(&t, 7).passed());
    }

    #[test]
    fn negative_genus_rejected() {
        let err = genus_closed_forms(&CoverParams { p: 3, beta: 1 }, 1).unwrap_err();
        assert!(matches!(err, Error::NegativeGenus(_)));
        assert!(CoverParams::new(3, 2).is_err());
        assert!(CoverParams::new(4, 3).is_err());
        assert_eq!(CoverParams::new(2, 3).unwrap_err(), Error::KleinCase);
    }

    #[test]
    fn oracle_spot_values() {
        let model = build_closure_model(3).unwrap();
        let d = find_monodromy(&model, 4).unwrap();
        assert_eq!(genus_by_coset_action(&d, &Subgroup::whole(model.group())).unwrap(), 0);
        assert_eq!(genus_by_coset_action(&d, model.n()).unwrap(), 2);

        let model = build_closure_model(5).unwrap();
        let d = find_monodromy(&model, 3).unwrap();
        assert_eq!(genus_by_coset_action(&d, model.cyclic()).unwrap(), 3);
    }

    #[test]
    fn oracle_agrees_with_closed_forms() {
        for (p, beta) in [(3, 3), (3, 4), (5, 3), (5, 4)] {
            let model = build_closure_model(p).unwrap();
            let d = find_monodromy(&model, beta).unwrap();
            let report = verify_genera(&model, &d).unwrap();
            assert!(report.passed(), "{p} {beta}: {:?}", report.first_failure());
        }
    }

    #[test]
    fn etale_examples() {
        let model = build_closure_model(3).unwrap();
        let d = find_monodromy(&model, 4).unwrap();
        let trivial = Subgroup::trivial(model.group());
        let whole = Subgroup::whole(model.group());
        assert!(verify_etale(&d, model.n(), model.n()).unwrap());
        assert!(verify_etale(&d, model.n(), &trivial).unwrap());
        assert!(!verify_etale(&d, &whole, model.n()).unwrap());
        assert!(verify_etale(&d, model.cyclic(), model.n()).is_err());
    }

    #[test]
    fn dimension_identities_spot_values() {
        let t = genus_closed_forms(&CoverParams::new(3, 4).unwrap(), 1).unwrap();
        let r = verify_dimension_identities(&t, 3);
        assert!(r.passed());
        assert_eq!(r.checks[1].detail, "5 = 2 + 3·1");
        let t = genus_closed_forms(&CoverParams::new(5, 3).unwrap(), 3).unwrap();
        assert_eq!(r.len(), 3);
        assert!(verify_dimension_identities(&t, 5).passed());
        let mut broken = t.clone();
        broken.dim_jt += 1;
        assert!(!verify_dimension_identities(&broken, 5).passed());
    }

    #[test]
    fn klein_tables() {
        let t = klein_genus_table(1, 2).unwrap();
        assert_eq!(
            t.closed,
            KleinGenera { g_y: 3, g_ys: 2, g_yr: 0, g_yrs: 1 }
        );
        assert_eq!(t.oracle, t.closed);
        assert_eq!(t.dim_prym, 1);
        assert!(t.report().passed());

        let t = klein_genus_table(2, 2).unwrap();
        assert_eq!(
            t.closed,
            KleinGenera { g_y: 5, g_ys: 3, g_yr: 1, g_yrs: 1 }
        );
        assert!(t.report().passed());
        assert!(klein_genus_table(0, 3).is_err());
    }
}
