//! Declarative JSON fixtures: group actions on graded rings, matrix
//! representations, and lists of Poincare series identities.
//!
//! Every bundled fixture is compiled into the library and can be loaded by
//! name; any other argument to [`load_fixture`] is read as a file path.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyccohom::{module_generation_check, row_dims, GradedAction};
use crate::error::{Error, Result};
use crate::f2poly::{bigraded_dimension, graded_dimension, Generator, Presentation, RingMap};
use crate::isotropy::{
    distinct_stabilizers, elementary_abelian_check, group_closure, isotropy_subgroups, maximal_stabilizers,
    projective_exponent_bound, verify_isotropy, FieldType, QMatrix, RepMatrixGroup,
};
use crate::qsqrt2::QSqrt2;
use crate::series::{linear_combination, rational_equal, IntPolynomial, RationalSeries};

const BUNDLED: &[(&str, &str)] = &[
    ("m16_swap", include_str!("../fixtures/m16_swap.json")),
    ("sd16_action", include_str!("../fixtures/sd16_action.json")),
    ("c4_trivial", include_str!("../fixtures/c4_trivial.json")),
    ("c4xc2_c2_swap", include_str!("../fixtures/c4xc2_c2_swap.json")),
    ("d8c4_extension", include_str!("../fixtures/d8c4_extension.json")),
    ("m16_rep", include_str!("../fixtures/m16_rep.json")),
    ("sd16_rep", include_str!("../fixtures/sd16_rep.json")),
    ("d8c4_rep", include_str!("../fixtures/d8c4_rep.json")),
    ("q8_rep", include_str!("../fixtures/q8_rep.json")),
    ("c4_plane_rotation", include_str!("../fixtures/c4_plane_rotation.json")),
    ("poincare_identities", include_str!("../fixtures/poincare_identities.json")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Action(ActionFixture),
    Representation(RepFixture),
    Identities(IdentitySuite),
}

impl Fixture {
    pub fn name(&self) -> &str {
        match self {
            Fixture::Action(f) => &f.name,
            Fixture::Representation(f) => &f.name,
            Fixture::Identities(f) => &f.name,
        }
    }

    /// Runs every check the fixture declares.
    pub fn verify(&self) -> Result<Vec<Check>> {
        match self {
            Fixture::Action(f) => verify_action(f),
            Fixture::Representation(f) => verify_representation(f),
            Fixture::Identities(f) => Ok(verify_identities(f)),
        }
    }
}

/// Parses fixture text; errors carry serde's line and column.
pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let err = |e: serde_json::Error| Error::Parse(e.to_string());
    let value: serde_json::Value = serde_json::from_str(text).map_err(err)?;
    // Typed parsing goes back to the text so errors keep their positions.
    match value.get("kind").and_then(serde_json::Value::as_str) {
        Some("action") => serde_json::from_str(text).map(Fixture::Action).map_err(err),
        Some("representation") => serde_json::from_str(text).map(Fixture::Representation).map_err(err),
        Some("identities") => serde_json::from_str(text).map(Fixture::Identities).map_err(err),
        Some(other) => Err(Error::Parse(format!("unknown fixture kind {other:?}"))),
        None => Err(Error::Parse("missing string field \"kind\"".into())),
    }
}

/// Loads a bundled fixture by name, or else the file at `name_or_path`, and
/// validates it by building its domain object.
pub fn load_fixture(name_or_path: &str) -> Result<Fixture> {
    let fixture = match bundled_source(name_or_path) {
        Some(text) => parse_fixture(text)?,
        None => {
            let path = Path::new(name_or_path);
            let text =
                std::fs::read_to_string(path).map_err(|e| Error::Fixture(format!("{name_or_path}: {e}")))?;
            parse_fixture(&text).map_err(|e| Error::Parse(format!("{name_or_path}: {e}")))?
        }
    };
    match &fixture {
        Fixture::Action(f) => {
            f.graded_action()?;
            if let Some(e2) = &f.e2_page {
                e2.presentation()?;
            }
        }
        Fixture::Representation(f) => {
            f.group()?;
        }
        Fixture::Identities(f) => {
            for id in &f.identities {
                id.parse()?;
            }
        }
    }
    Ok(fixture)
}

pub fn bundled(name: &str) -> Result<Fixture> {
    bundled_source(name)
        .ok_or_else(|| Error::Fixture(format!("no bundled fixture named {name:?}")))
        .and_then(|_| load_fixture(name))
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RowExpectation {
    pub rows: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationExpectation {
    pub generators: Vec<String>,
    pub kernel_numerator: String,
    pub kernel_denominator: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BigradedGenerator {
    pub name: String,
    pub s: u32,
    pub t: u32,
}

/// Bigraded presentation expected to reproduce the computed rows.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct E2Page {
    pub generators: Vec<BigradedGenerator>,
    pub relations: Vec<String>,
    pub s_max: u32,
}

impl E2Page {
    pub fn presentation(&self) -> Result<Presentation> {
        let gens = self.generators.iter().map(|g| Generator::bigraded(g.name.clone(), g.s, g.t)).collect();
        Presentation::with_relation_strings(gens, &self.relations)
    }
}

fn default_t_max() -> u32 {
    20
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFixture {
    #[serde(rename = "kind", default, skip_serializing)]
    _kind: Option<String>,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    /// Generator images; unlisted generators are fixed.
    pub action: BTreeMap<String, String>,
    pub group_order: u64,
    #[serde(default = "default_t_max")]
    pub t_max: u32,
    #[serde(default)]
    pub rows: Vec<RowExpectation>,
    #[serde(default)]
    pub module_generation: Option<GenerationExpectation>,
    #[serde(default)]
    pub e2_page: Option<E2Page>,
}

impl ActionFixture {
    pub fn presentation(&self) -> Result<Presentation> {
        let gens = self.generators.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect();
        Presentation::with_relation_strings(gens, &self.relations)
    }

    pub fn graded_action(&self) -> Result<GradedAction> {
        let map = RingMap::parse(self.presentation()?, &self.action)?;
        GradedAction::new(map, self.group_order)
    }

    /// Largest row index any expectation refers to.
    pub fn s_max(&self) -> u32 {
        let rows = self.rows.iter().flat_map(|r| r.rows.iter().copied());
        let e2 = self.e2_page.iter().map(|e| e.s_max);
        rows.chain(e2).max().unwrap_or(0)
    }
}

fn dims_to_string(dims: &[usize]) -> String {
    dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn expand_usize(series: &RationalSeries, bound: u32) -> Vec<Option<usize>> {
    series.expand(bound as usize).iter().map(|c| usize::try_from(c).ok()).collect()
}

pub fn verify_action(f: &ActionFixture) -> Result<Vec<Check>> {
    let ga = f.graded_action()?;
    let t_max = f.t_max;
    let s_max = f.s_max().max(3);
    let table = row_dims(&ga, s_max, t_max);
    let mut checks = Vec::new();
    for exp in &f.rows {
        let series = RationalSeries::parse(&exp.numerator, &exp.denominator)?;
        let want = expand_usize(&series, t_max);
        for &s in &exp.rows {
            let got = table.row(s);
            let passed = got.iter().map(|&d| Some(d)).eq(want.iter().copied());
            checks.push(Check::new(
                format!("{} row {s} = {series}", f.name),
                passed,
                format!("t = 0..{t_max}: {}", dims_to_string(&got)),
            ));
        }
    }
    if let Some(mg) = &f.module_generation {
        let pres = ga.presentation();
        let gens = mg.generators.iter().map(|g| pres.parse_poly(g)).collect::<Result<Vec<_>>>()?;
        let report = module_generation_check(&ga, &gens, t_max)?;
        checks.push(Check::new(
            format!("{} generated by {{{}}}", f.name, mg.generators.join(", ")),
            report.surjective(),
            match report.first_failure() {
                Some(d) => format!("not surjective in degree {d}"),
                None => format!("surjective through degree {t_max}"),
            },
        ));
        let series = RationalSeries::parse(&mg.kernel_numerator, &mg.kernel_denominator)?;
        let want = expand_usize(&series, t_max);
        let got = report.kernel_dims();
        checks.push(Check::new(
            format!("{} generation kernel = {series}", f.name),
            got.iter().map(|&d| Some(d)).eq(want.iter().copied()),
            dims_to_string(&got),
        ));
    }
    if let Some(e2) = &f.e2_page {
        let pres = e2.presentation()?;
        let mut mismatches = Vec::new();
        for s in 0..=e2.s_max {
            for t in 0..=t_max {
                let want = bigraded_dimension(&pres, s, t);
                let got = table.get(s, t).unwrap_or(0);
                if want != got {
                    mismatches.push(format!("({s},{t}): computed {got}, presentation {want}"));
                }
            }
        }
        checks.push(Check::new(
            format!("{} E2 page = {pres}", f.name),
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!("s = 0..{}, t = 0..{t_max}", e2.s_max)
            } else {
                mismatches.join("; ")
            },
        ));
    }
    let mut rank_nullity = true;
    let mut periodic = true;
    for t in 0..=t_max {
        let d = ga.degree_data(t);
        rank_nullity &= d.invariants() + d.rank_one_plus_g == graded_dimension(ga.presentation(), t);
        rank_nullity &= d.rank_one_plus_g + d.rank_norm <= d.dim;
        for s in 1..=s_max.saturating_sub(2) {
            periodic &= table.get(s, t) == table.get(s + 2, t);
        }
    }
    checks.push(Check::new(format!("{} rank-nullity", f.name), rank_nullity, format!("t = 0..{t_max}")));
    checks.push(Check::new(format!("{} periodicity", f.name), periodic, format!("s = 1..{s_max}")));
    Ok(checks)
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

impl ScalarSpec {
    fn rational(&self) -> Result<num_rational::BigRational> {
        match self {
            ScalarSpec::Int(i) => Ok(num_rational::BigRational::from_integer(BigInt::from(*i))),
            ScalarSpec::Text(s) => QSqrt2::parse_rational(s),
        }
    }
}

/// A matrix entry: an integer, a string such as `"1/2*sqrt2"`, or a pair
/// `[a, b]` meaning `a + b*sqrt2`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Pair([ScalarSpec; 2]),
    Int(i64),
    Text(String),
}

impl EntrySpec {
    pub fn value(&self) -> Result<QSqrt2> {
        match self {
            EntrySpec::Pair([a, b]) => Ok(QSqrt2::new(a.rational()?, b.rational()?)),
            EntrySpec::Int(i) => Ok(QSqrt2::from_int(*i)),
            EntrySpec::Text(s) => s.parse(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixGenerator {
    pub label: String,
    pub matrix: Vec<Vec<EntrySpec>>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    /// Every stabilizer lies in one of the listed groups.
    Contained,
    /// The distinct stabilizers are exactly the listed groups.
    Exact,
    /// The maximal stabilizers are exactly the listed groups.
    Maximal,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IsotropyExpectation {
    pub mode: MatchMode,
    /// Each group is given by generating words.
    pub groups: Vec<Vec<String>>,
    #[serde(default)]
    pub bound: Option<usize>,
    #[serde(default)]
    pub not_in_family: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RepFixture {
    #[serde(rename = "kind", default, skip_serializing)]
    _kind: Option<String>,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub field: Field,
    pub order: usize,
    pub generators: Vec<MatrixGenerator>,
    /// Pairs of words that must evaluate to the same matrix.
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
    pub expected: Option<IsotropyExpectation>,
}

impl RepFixture {
    pub fn group(&self) -> Result<RepMatrixGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let rows = g
                    .matrix
                    .iter()
                    .map(|r| r.iter().map(EntrySpec::value).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok((g.label.clone(), QMatrix::from_rows(rows)?))
            })
            .collect::<Result<Vec<_>>>()?;
        group_closure(&gens, self.order)
    }

    pub fn field_type(&self) -> FieldType {
        match self.field {
            Field::Real => FieldType::Real,
            Field::Complex => FieldType::Complex,
        }
    }
}

fn format_group(rep: &RepMatrixGroup, set: &std::collections::BTreeSet<usize>) -> String {
    format!("{{{}}}", rep.labels(set).join(", "))
}

pub fn verify_representation(f: &RepFixture) -> Result<Vec<Check>> {
    let rep = f.group()?;
    let mut checks = vec![Check::new(
        format!("{} closure", f.name),
        rep.order() == f.order,
        format!("{} elements", rep.order()),
    )];
    for [a, b] in &f.relations {
        let passed = rep.evaluate(a)? == rep.evaluate(b)?;
        checks.push(Check::new(format!("{} relation {a} = {b}", f.name), passed, ""));
    }
    let groups = isotropy_subgroups(&rep);
    checks.push(Check::new(
        format!("{} stabilizers fix their lines", f.name),
        verify_isotropy(&rep, &groups),
        format!("{} subspaces", groups.len()),
    ));
    let Some(exp) = &f.expected else {
        return Ok(checks);
    };
    let expected = exp
        .groups
        .iter()
        .map(|words| {
            let words: Vec<&str> = words.iter().map(String::as_str).collect();
            rep.generated(&words)
        })
        .collect::<Result<Vec<_>>>()?;
    let found = match exp.mode {
        MatchMode::Maximal => maximal_stabilizers(&groups),
        MatchMode::Exact | MatchMode::Contained => distinct_stabilizers(&groups),
    };
    let passed = match exp.mode {
        MatchMode::Contained => found.iter().all(|h| expected.iter().any(|k| h.is_subset(k))),
        MatchMode::Exact | MatchMode::Maximal => {
            found.len() == expected.len() && found.iter().all(|h| expected.contains(h))
        }
    };
    let shown: Vec<String> = found.iter().map(|h| format_group(&rep, h)).collect();
    checks.push(Check::new(
        format!("{} isotropy ({:?})", f.name, exp.mode).to_lowercase(),
        passed,
        shown.join(" "),
    ));
    let elementary: Result<Vec<bool>> =
        distinct_stabilizers(&groups).iter().map(|h| elementary_abelian_check(&rep, h)).collect();
    let all_elementary = elementary?.iter().all(|&b| b);
    let bound = projective_exponent_bound(&rep, f.field_type());
    if exp.not_in_family {
        checks.push(Check::new(
            format!("{} isotropy outside the family", f.name),
            !all_elementary && matches!(bound, Err(Error::IsotropyNotInFamily(_))),
            match &bound {
                Err(e) => e.to_string(),
                Ok(b) => format!("unexpected bound {b}"),
            },
        ));
    } else {
        checks.push(Check::new(format!("{} isotropy elementary abelian", f.name), all_elementary, ""));
        if let Some(want) = exp.bound {
            checks.push(Check::new(
                format!("{} projective exponent bound = {want}", f.name),
                bound.as_ref().ok() == Some(&want),
                match &bound {
                    Ok(b) => b.to_string(),
                    Err(e) => e.to_string(),
                },
            ));
        }
    }
    Ok(checks)
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitySuite {
    #[serde(rename = "kind", default, skip_serializing)]
    _kind: Option<String>,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub identities: Vec<Identity>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum IdentityKind {
    /// Two polynomials in `t` are equal.
    Polynomial { lhs: String, rhs: String },
    /// A signed sum of `numerator / denominator` terms equals `rhs`.
    Series { terms: Vec<(i64, String, String)>, rhs: (String, String) },
    /// Graded dimensions of a monomial quotient ring match a series.
    GradedRing {
        generators: Vec<GeneratorSpec>,
        relations: Vec<String>,
        numerator: String,
        denominator: String,
        bound: u32,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Identity {
    pub name: String,
    #[serde(flatten)]
    pub kind: IdentityKind,
}

enum ParsedIdentity {
    Polynomial(IntPolynomial, IntPolynomial),
    Series(RationalSeries, RationalSeries),
    Ring(Presentation, RationalSeries, u32),
}

impl Identity {
    fn parse(&self) -> Result<ParsedIdentity> {
        Ok(match &self.kind {
            IdentityKind::Polynomial { lhs, rhs } => ParsedIdentity::Polynomial(lhs.parse()?, rhs.parse()?),
            IdentityKind::Series { terms, rhs } => {
                let terms = terms
                    .iter()
                    .map(|(c, n, d)| Ok((*c, RationalSeries::parse(n, d)?)))
                    .collect::<Result<Vec<_>>>()?;
                ParsedIdentity::Series(linear_combination(&terms), RationalSeries::parse(&rhs.0, &rhs.1)?)
            }
            IdentityKind::GradedRing { generators, relations, numerator, denominator, bound } => {
                let gens = generators.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect();
                ParsedIdentity::Ring(
                    Presentation::with_relation_strings(gens, relations)?,
                    RationalSeries::parse(numerator, denominator)?,
                    *bound,
                )
            }
        })
    }

    pub fn evaluate(&self) -> Result<Check> {
        Ok(match self.parse()? {
            ParsedIdentity::Polynomial(a, b) => Check::new(&self.name, a == b, format!("{a} vs {b}")),
            ParsedIdentity::Series(lhs, rhs) => {
                Check::new(&self.name, rational_equal(&lhs, &rhs), format!("{lhs} vs {rhs}"))
            }
            ParsedIdentity::Ring(pres, series, bound) => {
                let got: Vec<BigInt> =
                    (0..=bound).map(|d| BigInt::from(graded_dimension(&pres, d))).collect();
                Check::new(
                    &self.name,
                    got == series.expand(bound as usize),
                    format!("{pres} vs {series} through degree {bound}"),
                )
            }
        })
    }
}

pub fn verify_identities(suite: &IdentitySuite) -> Vec<Check> {
    suite
        .identities
        .iter()
        .map(|id| id.evaluate().unwrap_or_else(|e| Check::new(&id.name, false, e.to_string())))
        .collect()
}

/// Evaluates the bundled Poincare series identities.
pub fn poincare_identity_suite() -> Vec<Check> {
    match bundled("poincare_identities") {
        Ok(Fixture::Identities(suite)) => verify_identities(&suite),
        Ok(_) => vec![Check::new("poincare_identities", false, "wrong fixture kind")],
        Err(e) => vec![Check::new("poincare_identities", false, e.to_string())],
    }
}
