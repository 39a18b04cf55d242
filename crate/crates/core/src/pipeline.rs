//! End-to-end verification runs behind the command-line front end.
//!
//! Every run produces a [`RunReport`] whose sections appear in a fixed order.
//! Machine-readable output encodes integers as decimal strings and
//! permutations in cycle notation, so it is exact and byte-stable.

use std::fmt::Write as _;

use serde::Serialize;

use crate::covers::{
    genus_table_by_oracle, klein_genus_table, verify_dimension_identities, verify_genera,
    GenusTable,
};
use crate::error::{Error, Result};
use crate::galois::{
    validate_odd_prime, verify_block_structure, verify_presentation, verify_structure,
    verify_subcover_count, ClosureModel, ModelConfig, DEFAULT_MAX_P,
};
use crate::isogeny::{
    phi_constant, torsion_containment_shadow, verify_composite_alpha_for, verify_klein_identities,
    verify_phi_identity_for, verify_projector_completeness, verify_projector_p_action,
    TorsionBounds,
};
use crate::klein::{verify_klein_group, KleinModel};
use crate::monodromy::{
    find_klein_monodromy, find_monodromy_with, validate_monodromy, MonodromyDatum, SearchOptions,
    DEFAULT_BETA_CAP,
};
use crate::report::Report;
use crate::reptheory::{
    column_orthogonality, degrees, isotypic_dimensions, verify_table, weighted_row_sums_vanish,
    CharacterTable, CharacterTableSummary,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Above this prime the isogeny stage checks a prefix of the indices `i`
/// unless [`RunOptions::exhaustive_isogeny`] is set.
pub const ISOGENY_EXHAUSTIVE_MAX_P: usize = 7;
pub const ISOGENY_SAMPLE: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub max_p: usize,
    pub beta_cap: usize,
    pub first_is_sigma: bool,
    /// Branch data in the monodromy text format, used instead of the search.
    pub monodromy: Option<String>,
    pub exhaustive_isogeny: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_p: DEFAULT_MAX_P,
            beta_cap: DEFAULT_BETA_CAP,
            first_is_sigma: false,
            monodromy: None,
            exhaustive_isogeny: false,
        }
    }
}

/// Which part of the pipeline to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Report { p: usize, beta: Option<usize> },
    Klein { beta_r: usize, beta_rs: usize },
    Characters { p: usize },
    Isogeny { p: usize },
    Genera { p: usize, beta: Option<usize> },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_rs: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub degree: String,
    pub order: String,
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusSummary {
    pub g_x: String,
    pub g_y: Vec<String>,
    pub g_z: String,
    pub g_t: String,
    pub dim_prym: Vec<String>,
    pub dim_jt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KleinGenusSummary {
    pub g_y: String,
    pub g_ys: String,
    pub g_yr: String,
    pub g_yrs: String,
    pub dim_prym: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterDigest {
    pub class_sizes: Vec<String>,
    pub degrees: Vec<String>,
    pub degree_square_sum: String,
    pub orthonormal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsogenySummary {
    pub constant: String,
    pub indices: Vec<String>,
    pub scope: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Report,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genera: Option<GenusSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub klein_genera: Option<KleinGenusSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characters: Option<CharacterDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character_table: Option<CharacterTableSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isogeny: Option<IsogenySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<TorsionBounds>,
    pub sections: Vec<Section>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl RunReport {
    fn section(&mut self, name: &str, checks: Report) {
        self.sections.push(Section {
            name: name.to_string(),
            checks,
        });
    }

    fn finish(mut self) -> Self {
        let failure = self
            .sections
            .iter()
            .find_map(|s| s.checks.first_failure().map(|c| format!("{}: {}", s.name, c.name)));
        self.verdict = if failure.is_none() { "pass" } else { "fail" }.to_string();
        self.first_failure = failure;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn check(&self, section: &str, name: &str) -> Option<bool> {
        self.sections
            .iter()
            .find(|s| s.name == section)?
            .checks
            .get(name)
            .map(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let mut header = vec![p.command.clone()];
        for (key, value) in [("p", &p.p), ("beta", &p.beta), ("beta_r", &p.beta_r), ("beta_rs", &p.beta_rs)] {
            if let Some(v) = value {
                header.push(format!("{key}={v}"));
            }
        }
        writeln!(out, "{}", header.join(" ")).unwrap();
        if let Some(g) = &self.group {
            write!(out, "group: degree {}, order {}", g.degree, g.order).unwrap();
            if let Some(m) = &g.m {
                write!(out, ", m = {m}").unwrap();
            }
            writeln!(out, "; generators {}", g.generators.join(", ")).unwrap();
        }
        if let Some(tuple) = &self.monodromy {
            writeln!(out, "monodromy: {}", tuple.join(" ")).unwrap();
        }
        if let Some(g) = &self.genera {
            writeln!(
                out,
                "genera: g(X) = {}, g(Y_j) = [{}], g(Z) = {}, g(T) = {}, dim P(Y_j/X) = [{}]",
                g.g_x,
                g.g_y.join(", "),
                g.g_z,
                g.g_t,
                g.dim_prym.join(", ")
            )
            .unwrap();
        }
        if let Some(g) = &self.klein_genera {
            writeln!(
                out,
                "genera: g(Y) = {}, g(Y_s) = {}, g(Y_r) = {}, g(Y_rs) = {}, dim P(Y/Y_s) = {}",
                g.g_y, g.g_ys, g.g_yr, g.g_yrs, g.dim_prym
            )
            .unwrap();
        }
        if let Some(c) = &self.characters {
            writeln!(
                out,
                "characters: degrees [{}], class sizes [{}], sum of squares {}",
                c.degrees.join(", "),
                c.class_sizes.join(", "),
                c.degree_square_sum
            )
            .unwrap();
        }
        if let Some(t) = &self.character_table {
            writeln!(out, "character table:").unwrap();
            let reps: Vec<String> = t
                .classes
                .iter()
                .map(|c| format!("{} [{}]", c.representative, c.size))
                .collect();
            writeln!(out, "  classes: {}", reps.join("; ")).unwrap();
            for chi in t.irreducibles.iter().chain(&t.rational) {
                writeln!(out, "  {}: {}", chi.label, chi.values.join(" | ")).unwrap();
            }
        }
        if let Some(i) = &self.isogeny {
            writeln!(
                out,
                "isogeny: Phi_i = {} on e_i for i in [{}] ({})",
                i.constant,
                i.indices.join(", "),
                i.scope
            )
            .unwrap();
        }
        if let Some(t) = &self.torsion {
            writeln!(out, "torsion bounds: ({}, {}); {}", t.lower, t.upper, t.strictness).unwrap();
        }
        for s in &self.sections {
            writeln!(out, "[{}]", s.name).unwrap();
            for c in &s.checks.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "  {mark}  {} -- {}", c.name, c.detail).unwrap();
            }
        }
        write!(out, "verdict: {}", self.verdict.to_uppercase()).unwrap();
        if let Some(f) = &self.first_failure {
            write!(out, " (first failure: {f})").unwrap();
        }
        out.push('\n');
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

/// Maps an error to the usage/internal exit codes.
pub fn error_exit_code(err: &Error) -> i32 {
    if err.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_INTERNAL
    }
}

pub fn run(command: Command, options: &RunOptions) -> Result<RunReport> {
    match command {
        Command::Report { p, beta } => run_report(p, beta, options),
        Command::Klein { beta_r, beta_rs } => run_klein(beta_r, beta_rs, options),
        Command::Characters { p } => run_characters(p, options),
        Command::Isogeny { p } => run_isogeny(p, options),
        Command::Genera { p, beta } => run_genera(p, beta, options),
    }
}

fn model_for(p: usize, options: &RunOptions) -> Result<ClosureModel> {
    validate_odd_prime(p, options.max_p)?;
    ClosureModel::build(
        p,
        &ModelConfig {
            max_p: options.max_p,
            ..ModelConfig::default()
        },
    )
}

fn params(command: &str, p: usize, beta: Option<usize>) -> Params {
    Params {
        command: command.into(),
        p: Some(p.to_string()),
        beta: beta.map(|b| b.to_string()),
        ..Params::default()
    }
}

fn group_summary(model: &ClosureModel) -> GroupSummary {
    let listing = model.group().listing();
    GroupSummary {
        degree: listing.degree.to_string(),
        order: listing.order.to_string(),
        generators: listing.generators,
        m: Some(model.m().to_string()),
    }
}

fn strings(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

fn genus_summary(t: &GenusTable) -> GenusSummary {
    GenusSummary {
        g_x: t.g_x.to_string(),
        g_y: strings(&t.g_y),
        g_z: t.g_z.to_string(),
        g_t: t.g_t.to_string(),
        dim_prym: strings(&t.dim_p),
        dim_jt: t.dim_jt.to_string(),
    }
}

/// Searched or user-supplied branch data. A supplied datum must match `p`
/// (and `beta` when given) and pass every validity check.
fn monodromy_for(model: &ClosureModel, beta: Option<usize>, options: &RunOptions) -> Result<MonodromyDatum> {
    match &options.monodromy {
        Some(text) => {
            let datum = MonodromyDatum::parse(text, model.group())?;
            if datum.p() != model.p() || beta.is_some_and(|b| b != datum.beta()) {
                return Err(Error::Parse(format!(
                    "monodromy file is for p={} beta={}, not the requested parameters",
                    datum.p(),
                    datum.beta()
                )));
            }
            if datum.beta() > options.beta_cap {
                return Err(Error::BetaOutOfRange {
                    beta: datum.beta(),
                    min: 3,
                    max: options.beta_cap,
                });
            }
            let report = validate_monodromy(&datum);
            if let Some(failure) = report.first_failure() {
                return Err(Error::Parse(format!(
                    "monodromy file fails '{}': {}",
                    failure.name, failure.detail
                )));
            }
            Ok(datum)
        }
        None => {
            let beta = beta.ok_or_else(|| Error::Parse("beta is required without a monodromy file".into()))?;
            find_monodromy_with(
                model,
                beta,
                &SearchOptions {
                    beta_cap: options.beta_cap,
                    first_is_sigma: options.first_is_sigma,
                },
            )
        }
    }
}

fn isogeny_indices(model: &ClosureModel, options: &RunOptions) -> (Vec<usize>, String) {
    let m = model.m();
    if options.exhaustive_isogeny || model.p() <= ISOGENY_EXHAUSTIVE_MAX_P {
        ((1..=m).collect(), format!("all {m} indices"))
    } else {
        let k = ISOGENY_SAMPLE.min(m);
        ((1..=k).collect(), format!("sampled: first {k} of {m} indices"))
    }
}

fn genera_sections(
    report: &mut RunReport,
    model: &ClosureModel,
    beta: Option<usize>,
    options: &RunOptions,
) -> Result<()> {
    let datum = monodromy_for(model, beta, options)?;
    report.params.beta = Some(datum.beta().to_string());
    report.monodromy = Some(datum.cycle_strings());
    report.section("monodromy", validate_monodromy(&datum));
    report.section("genera", verify_genera(model, &datum)?);
    let table = genus_table_by_oracle(model, &datum)?;
    report.section("dimension identities", verify_dimension_identities(&table, model.p()));
    report.section("isotypic dimensions", isotypic_dimensions(&table, model.p()).report());
    report.genera = Some(genus_summary(&table));
    Ok(())
}

fn character_sections(report: &mut RunReport, model: &ClosureModel) -> Result<CharacterTable> {
    let table = CharacterTable::build(model)?;
    let mut checks = verify_table(model, &table);
    checks.push(
        "column orthogonality",
        column_orthogonality(&table),
        "sum over irreducibles of chi(a) conj chi(b)",
    );
    checks.push(
        "weighted row sums vanish",
        weighted_row_sums_vanish(&table),
        "sum over G of chi = 0 for nontrivial chi",
    );
    let degs = degrees(&table);
    report.characters = Some(CharacterDigest {
        class_sizes: (0..table.classes.len())
            .map(|c| table.classes.size(c).to_string())
            .collect(),
        degrees: strings(&degs),
        degree_square_sum: degs.iter().map(|d| d * d).sum::<u64>().to_string(),
        orthonormal: checks.get("orthonormality").is_some_and(|c| c.passed),
    });
    report.section("characters", checks);
    Ok(table)
}

fn isogeny_sections(report: &mut RunReport, model: &ClosureModel, options: &RunOptions) -> Result<()> {
    let (indices, scope) = isogeny_indices(model, options);
    report.section("phi identity", verify_phi_identity_for(model, &indices)?);
    report.section("composite", verify_composite_alpha_for(model, &indices)?);
    let mut projectors = verify_projector_completeness(model)?;
    projectors.extend(verify_projector_p_action(model)?);
    report.section("projectors", projectors);
    let torsion = torsion_containment_shadow(model);
    report.section("torsion bounds", torsion.report());
    report.torsion = Some(torsion);
    report.isogeny = Some(IsogenySummary {
        constant: phi_constant(model.p()).to_string(),
        indices: indices.iter().map(usize::to_string).collect(),
        scope,
    });
    Ok(())
}

fn structure_sections(report: &mut RunReport, model: &ClosureModel) {
    report.group = Some(group_summary(model));
    report.section("presentation", verify_presentation(model));
    report.section("structure", verify_structure(model));
    report.section("block structure", verify_block_structure(model));
    report.section("subcovers", verify_subcover_count(model));
}

/// The full pipeline for odd `p`.
pub fn run_report(p: usize, beta: Option<usize>, options: &RunOptions) -> Result<RunReport> {
    if p == 2 {
        return Err(Error::KleinCase);
    }
    let model = model_for(p, options)?;
    let mut report = RunReport {
        params: params("report", p, beta),
        ..RunReport::default()
    };
    structure_sections(&mut report, &model);
    genera_sections(&mut report, &model, beta, options)?;
    character_sections(&mut report, &model)?;
    isogeny_sections(&mut report, &model, options)?;
    Ok(report.finish())
}

pub fn run_genera(p: usize, beta: Option<usize>, options: &RunOptions) -> Result<RunReport> {
    let model = model_for(p, options)?;
    let mut report = RunReport {
        params: params("genera", p, beta),
        group: Some(group_summary(&model)),
        ..RunReport::default()
    };
    genera_sections(&mut report, &model, beta, options)?;
    Ok(report.finish())
}

pub fn run_characters(p: usize, options: &RunOptions) -> Result<RunReport> {
    let model = model_for(p, options)?;
    let mut report = RunReport {
        params: params("characters", p, None),
        group: Some(group_summary(&model)),
        ..RunReport::default()
    };
    let table = character_sections(&mut report, &model)?;
    report.character_table = Some(table.summary(model.group()));
    Ok(report.finish())
}

pub fn run_isogeny(p: usize, options: &RunOptions) -> Result<RunReport> {
    let model = model_for(p, options)?;
    let mut report = RunReport {
        params: params("isogeny", p, None),
        group: Some(group_summary(&model)),
        ..RunReport::default()
    };
    isogeny_sections(&mut report, &model, options)?;
    Ok(report.finish())
}

/// The `p = 2` pipeline.
pub fn run_klein(beta_r: usize, beta_rs: usize, options: &RunOptions) -> Result<RunReport> {
    if beta_r == 0 || beta_rs == 0 || beta_r + beta_rs < 3 {
        return Err(Error::DegenerateKlein { beta_r, beta_rs });
    }
    if beta_r + beta_rs > options.beta_cap {
        return Err(Error::BetaOutOfRange {
            beta: beta_r + beta_rs,
            min: 3,
            max: options.beta_cap,
        });
    }
    let model = KleinModel::new();
    let listing = model.group().listing();
    let mut report = RunReport {
        params: Params {
            command: "klein".into(),
            p: Some("2".into()),
            beta: Some((beta_r + beta_rs).to_string()),
            beta_r: Some(beta_r.to_string()),
            beta_rs: Some(beta_rs.to_string()),
        },
        group: Some(GroupSummary {
            degree: listing.degree.to_string(),
            order: listing.order.to_string(),
            generators: listing.generators,
            m: None,
        }),
        ..RunReport::default()
    };
    report.section("klein group", verify_klein_group(&model));
    let datum = find_klein_monodromy(&model, beta_r, beta_rs)?;
    report.monodromy = Some(datum.cycle_strings());
    report.section("monodromy", validate_monodromy(&datum));
    let table = klein_genus_table(beta_r, beta_rs)?;
    report.section("genera", table.report());
    report.klein_genera = Some(KleinGenusSummary {
        g_y: table.oracle.g_y.to_string(),
        g_ys: table.oracle.g_ys.to_string(),
        g_yr: table.oracle.g_yr.to_string(),
        g_yrs: table.oracle.g_yrs.to_string(),
        dim_prym: table.dim_prym.to_string(),
    });
    report.section("identities", verify_klein_identities(beta_r, beta_rs)?);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_beta4_passes() {
        let report = run_report(3, Some(4), &RunOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure);
        assert_eq!(report.genera.as_ref().unwrap().g_z, "5");
        assert_eq!(report.isogeny.as_ref().unwrap().constant, "2");
        assert_eq!(report.exit_code(), EXIT_PASS);
    }

    #[test]
    fn p5_beta3_passes() {
        let report = run_report(5, Some(3), &RunOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure);
        assert_eq!(report.group.as_ref().unwrap().m.as_deref(), Some("3"));
        assert_eq!(report.isogeny.as_ref().unwrap().constant, "8");
        assert_eq!(report.characters.as_ref().unwrap().degree_square_sum, "80");
    }

    #[test]
    fn usage_errors() {
        let opts = RunOptions::default();
        let err = run_report(4, Some(3), &opts).unwrap_err();
        assert_eq!(err.to_string(), "p must be prime (got 4)");
        assert_eq!(error_exit_code(&err), EXIT_USAGE);
        assert_eq!(error_exit_code(&run_report(3, Some(2), &opts).unwrap_err()), EXIT_USAGE);
        assert_eq!(error_exit_code(&run_klein(0, 3, &opts).unwrap_err()), EXIT_USAGE);
        assert_eq!(error_exit_code(&run_report(3, None, &opts).unwrap_err()), EXIT_USAGE);
        assert_eq!(error_exit_code(&Error::Internal("x".into())), EXIT_INTERNAL);
    }

    #[test]
    fn klein_runs() {
        for (a, b) in [(1, 2), (2, 2)] {
            let report = run_klein(a, b, &RunOptions::default()).unwrap();
            assert!(report.passed(), "{:?}", report.first_failure);
        }
        let r = run_klein(1, 2, &RunOptions::default()).unwrap();
        assert_eq!(r.klein_genera.unwrap().dim_prym, "1");
    }

    #[test]
    fn monodromy_override() {
        let model = model_for(3, &RunOptions::default()).unwrap();
        let datum = find_monodromy_with(&model, 4, &SearchOptions::default()).unwrap();
        let options = RunOptions {
            monodromy: Some(datum.to_text()),
            ..RunOptions::default()
        };
        let report = run_genera(3, None, &options).unwrap();
        assert!(report.passed());
        assert_eq!(report.params.beta.as_deref(), Some("4"));
        assert!(run_genera(3, Some(5), &options).is_err());

        let bad = RunOptions {
            monodromy: Some("p=3 beta=3\n(1,2,3)(4,5,6)\n(1,2,3)(4,5,6)\n(1,2,3)(4,5,6)\n".into()),
            ..RunOptions::default()
        };
        let err = run_genera(3, None, &bad).unwrap_err();
        assert_eq!(error_exit_code(&err), EXIT_USAGE);
    }

    #[test]
    fn deterministic_json() {
        let a = run_report(3, Some(3), &RunOptions::default()).unwrap().to_json();
        let b = run_report(3, Some(3), &RunOptions::default()).unwrap().to_json();
        assert_eq!(a, b);
        fn no_numbers(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Number(_) => false,
                serde_json::Value::Array(items) => items.iter().all(no_numbers),
                serde_json::Value::Object(map) => map.values().all(no_numbers),
                _ => true,
            }
        }
        let value: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert!(no_numbers(&value), "integers are encoded as strings");
    }

    #[test]
    fn failure_names_first_check() {
        let mut report = RunReport::default();
        let mut checks = Report::new();
        checks.push("fine", true, "");
        checks.push("broken", false, "");
        report.section("stage", checks);
        let report = report.finish();
        assert_eq!(report.exit_code(), EXIT_FAIL);
        assert_eq!(report.first_failure.as_deref(), Some("stage: broken"));
        assert!(report.to_text().contains("first failure: stage: broken"));
    }
}
