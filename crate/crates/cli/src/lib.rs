//! `exponent` command-line front end.
//!
//! [`run`] parses arguments, dispatches one subcommand and returns the exit
//! code together with everything that would be printed, so the binary is a
//! thin wrapper and tests can call it in-process.

pub mod tables;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use exponent_core::cyccohom::row_dims;
use exponent_core::elemabelian::is_prime;
use exponent_core::fixture::{load_fixture, poincare_identity_suite, Check, Fixture};
use exponent_core::repcoker::{
    cokernel_structure_with, k_theory_lower_bounds, predicted_exponents, verify_conjecture_with,
    CokernelOptions, DEFAULT_SIZE_CEILING,
};
use exponent_core::series::qnomial_row;
use exponent_core::{AbelianGroupType, Error, GroupSpec, Normalization};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "exponent",
    version,
    about = "Cokernels of representation-ring edge maps, E2-page rows and isotropy checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOptions,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOptions {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Cyclic subgroup representative used when building the pairing matrix.
    #[arg(long, global = true, value_enum, default_value_t = NormalizationArg::Leftmost)]
    pub normalization: NormalizationArg,
    /// Refuse cokernel computations with more than this many non-zero group elements.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CEILING)]
    pub size_ceiling: u128,
    /// Worker threads; defaults to RAYON_NUM_THREADS or the number of CPUs.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
}

impl GlobalOptions {
    fn cokernel_options(&self) -> CokernelOptions {
        CokernelOptions {
            normalization: match self.normalization {
                NormalizationArg::Leftmost => Normalization::Leftmost,
                NormalizationArg::Rightmost => Normalization::Rightmost,
            },
            size_ceiling: self.size_ceiling,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Tsv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    /// First non-zero coordinate is 1.
    Leftmost,
    /// Last non-zero coordinate is 1.
    Rightmost,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure of the cokernel Q_{p,n}.
    Coker {
        #[arg(value_parser = parse_prime)]
        p: u64,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Table of Q_{p,n} in the published layout, for n = 1..nmax.
    CokerTable {
        #[arg(value_parser = parse_prime)]
        p: u64,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
    },
    /// Multiplicities predicted from p-nomial coefficients.
    Predict {
        #[arg(value_parser = parse_prime)]
        p: u64,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Sum over j = 0..p-1 instead of j = 0..p-2.
        #[arg(long)]
        literal_range: bool,
    },
    /// Compare the prediction with the computed cokernel.
    Conjecture {
        #[arg(value_parser = parse_prime)]
        p: u64,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Sum over j = 0..p-1 instead of j = 0..p-2.
        #[arg(long)]
        literal_range: bool,
    },
    /// Coefficients of (1 + t + ... + t^(q-1))^x.
    Qnomial {
        x: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        q: u32,
    },
    /// Check the bundled Poincare series identities.
    PoincareSuite,
    /// E2-page dimensions H^s(C_q; R_t) of an action fixture.
    E2rows {
        /// Bundled fixture name or path to a JSON file.
        fixture: String,
        #[arg(long)]
        smax: Option<u32>,
        #[arg(long)]
        tmax: Option<u32>,
    },
    /// Run every check an action fixture declares.
    E2verify { fixture: String },
    /// Run the isotropy checks of a representation fixture.
    Isotropy { fixture: String },
    /// Lower bounds on the exponents of KU and KO for n = 1..nmax.
    Kbounds {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
    },
    /// Run the full acceptance suite.
    VerifyAll,
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: message }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match cli.global.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.into()).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Outcome::usage(format!("error: --threads: {e}\n")),
        },
        None => execute(&cli),
    }
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let mut out = Output::default();
    let result = match &cli.command {
        Command::Coker { p, n } => coker(&cli.global, *p, *n, &mut out),
        Command::CokerTable { p, nmax } => coker_table(&cli.global, *p, *nmax, &mut out),
        Command::Predict { p, n, literal_range } => predict(&cli.global, *p, *n, *literal_range, &mut out),
        Command::Conjecture { p, n, literal_range } => {
            conjecture(&cli.global, *p, *n, *literal_range, &mut out)
        }
        Command::Qnomial { x, q } => {
            qnomial(cli.global.format, *x, *q, &mut out);
            Ok(())
        }
        Command::PoincareSuite => {
            checks(cli.global.format, &poincare_identity_suite(), &mut out);
            Ok(())
        }
        Command::E2rows { fixture, smax, tmax } => e2rows(cli.global.format, fixture, *smax, *tmax, &mut out),
        Command::E2verify { fixture } => {
            fixture_checks(cli.global.format, fixture, FixtureKind::Action, &mut out)
        }
        Command::Isotropy { fixture } => {
            fixture_checks(cli.global.format, fixture, FixtureKind::Representation, &mut out)
        }
        Command::Kbounds { nmax } => kbounds(cli.global.format, *nmax, &mut out),
        Command::VerifyAll => {
            verify_all(&cli.global, &mut out);
            Ok(())
        }
    };
    match result {
        Ok(()) => Outcome {
            code: if out.failed { EXIT_FAILED } else { EXIT_OK },
            stdout: out.stdout,
            stderr: out.stderr,
        },
        Err(e) => {
            Outcome { code: EXIT_USAGE, stdout: out.stdout, stderr: format!("{}error: {e}\n", out.stderr) }
        }
    }
}

#[derive(Default)]
struct Output {
    stdout: String,
    stderr: String,
    failed: bool,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }

    fn json(&mut self, v: &Value) {
        self.line(v.to_string());
    }
}

fn big_json(x: &BigUint) -> Value {
    match u64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

fn order(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

/// `{"order": multiplicity}` with orders ascending.
fn structure_json(p: u64, counts: &BTreeMap<u32, BigUint>) -> Value {
    let map: Map<String, Value> = counts
        .iter()
        .filter(|(_, m)| **m != BigUint::default())
        .map(|(&k, m)| (order(p, k).to_string(), big_json(m)))
        .collect();
    Value::Object(map)
}

fn big_counts(g: &AbelianGroupType) -> BTreeMap<u32, BigUint> {
    g.counts().iter().map(|(&k, &m)| (k, BigUint::from(m))).collect()
}

fn coker(opts: &GlobalOptions, p: u64, n: u32, out: &mut Output) -> Result<(), Error> {
    let spec = GroupSpec::new(p, n)?;
    let g = cokernel_structure_with(spec, opts.cokernel_options())?;
    match opts.format {
        Format::Json => out.json(&json!({"p": p, "n": n, "structure": structure_json(p, &big_counts(&g))})),
        Format::Tsv => out.stdout.push_str(&table_tsv(p, &[(n, big_counts(&g))])),
        Format::Pretty => out.line(format!("Q_{{{p},{n}}} = {g}")),
    }
    Ok(())
}

fn coker_table(opts: &GlobalOptions, p: u64, nmax: u32, out: &mut Output) -> Result<(), Error> {
    let options = opts.cokernel_options();
    let columns = (1..=nmax)
        .into_par_iter()
        .map(|n| {
            let g = cokernel_structure_with(GroupSpec::new(p, n)?, options)?;
            Ok((n, big_counts(&g)))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    match opts.format {
        Format::Json => {
            let cols: Vec<Value> =
                columns.iter().map(|(n, c)| json!({"n": n, "structure": structure_json(p, c)})).collect();
            out.json(&json!({"p": p, "columns": cols}));
        }
        Format::Tsv => out.stdout.push_str(&table_tsv(p, &columns)),
        Format::Pretty => out.stdout.push_str(&table_pretty(p, &columns)),
    }
    Ok(())
}

fn table_cells(p: u64, columns: &[(u32, BTreeMap<u32, BigUint>)]) -> Vec<(BigUint, Vec<String>)> {
    let kmax = columns.iter().filter_map(|(_, c)| c.keys().next_back()).max().copied().unwrap_or(0);
    (0..=kmax)
        .map(|k| {
            let cells = columns
                .iter()
                .map(|(_, c)| match c.get(&k) {
                    Some(m) if *m != BigUint::default() => m.to_string(),
                    _ => String::new(),
                })
                .collect();
            (order(p, k), cells)
        })
        .collect()
}

/// Rows are orders `p^k` including 1, columns are `n`; zero entries are blank.
pub fn table_tsv(p: u64, columns: &[(u32, BTreeMap<u32, BigUint>)]) -> String {
    let mut s = String::from("order");
    for (n, _) in columns {
        let _ = write!(s, "\t{n}");
    }
    s.push('\n');
    for (ord, cells) in table_cells(p, columns) {
        let _ = writeln!(s, "{ord}\t{}", cells.join("\t"));
    }
    s
}

pub fn table_pretty(p: u64, columns: &[(u32, BTreeMap<u32, BigUint>)]) -> String {
    let rows = table_cells(p, columns);
    let head = format!("Z/{p}^k");
    let labels: Vec<String> = rows.iter().map(|(o, _)| format!("Z/{o}")).collect();
    let lw = labels.iter().map(String::len).chain([head.len(), 1]).max().unwrap_or(1);
    let cw = rows
        .iter()
        .flat_map(|(_, c)| c.iter().map(String::len))
        .chain(columns.iter().map(|(n, _)| n.to_string().len()))
        .max()
        .unwrap_or(1);
    let mut s = format!("{:<lw$} |", "n");
    for (n, _) in columns {
        let _ = write!(s, " {n:>cw$}");
    }
    s.push('\n');
    let _ = writeln!(s, "{}-+{}", "-".repeat(lw), "-".repeat((cw + 1) * columns.len()));
    let _ = writeln!(s, "{head:<lw$} |");
    for (label, (_, cells)) in labels.iter().zip(&rows) {
        let mut line = format!("{label:<lw$} |");
        for c in cells {
            let _ = write!(line, " {c:>cw$}");
        }
        let _ = writeln!(s, "{}", line.trim_end());
    }
    s
}

fn predict(opts: &GlobalOptions, p: u64, n: u32, literal: bool, out: &mut Output) -> Result<(), Error> {
    let spec = GroupSpec::new(p, n)?;
    let predicted = predicted_exponents(spec, literal);
    match opts.format {
        Format::Json => out.json(&json!({
            "p": p,
            "n": n,
            "literal_range": literal,
            "structure": structure_json(p, &predicted),
        })),
        Format::Tsv => out.stdout.push_str(&table_tsv(p, &[(n, predicted)])),
        Format::Pretty => {
            let g = AbelianGroupType::new(
                p,
                predicted.iter().filter_map(|(&k, m)| u64::try_from(m).ok().map(|m| (k, m))).collect(),
            );
            let fits = predicted.values().all(|m| u64::try_from(m).is_ok());
            if fits {
                out.line(format!("predicted Q_{{{p},{n}}} = {g}"));
            } else {
                for (k, m) in &predicted {
                    out.line(format!("Z/{}\t{m}", order(p, *k)));
                }
            }
        }
    }
    Ok(())
}

fn conjecture(opts: &GlobalOptions, p: u64, n: u32, literal: bool, out: &mut Output) -> Result<(), Error> {
    let spec = GroupSpec::new(p, n)?;
    let report = verify_conjecture_with(spec, literal, opts.cokernel_options())?;
    out.failed = !report.passed();
    match opts.format {
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "order": order(p, r.k).to_string(),
                        "computed": big_json(&r.computed),
                        "predicted": big_json(&r.predicted),
                        "match": r.matches(),
                    })
                })
                .collect();
            out.json(
                &json!({"p": p, "n": n, "literal_range": literal, "passed": report.passed(), "rows": rows}),
            );
        }
        Format::Tsv => {
            out.line("order\tcomputed\tpredicted\tmatch");
            for r in &report.rows {
                out.line(format!("{}\t{}\t{}\t{}", order(p, r.k), r.computed, r.predicted, r.matches()));
            }
        }
        Format::Pretty => {
            out.line(format!("Q_{{{p},{n}}} = {}", report.computed));
            for r in &report.rows {
                let mark = if r.matches() { "ok" } else { "MISMATCH" };
                out.line(format!(
                    "  Z/{:<8} computed {:>6}  predicted {:>6}  {mark}",
                    order(p, r.k).to_string(),
                    r.computed.to_string(),
                    r.predicted.to_string()
                ));
            }
            let range = if literal { "j = 0..p-1" } else { "j = 0..p-2" };
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            out.line(format!("{verdict} ({range})"));
        }
    }
    Ok(())
}

fn qnomial(format: Format, x: u32, q: u32, out: &mut Output) {
    let row = qnomial_row(x, q);
    match format {
        Format::Json => {
            let coeffs: Vec<Value> = row.iter().map(big_json).collect();
            out.json(&json!({"x": x, "q": q, "coefficients": coeffs}));
        }
        Format::Tsv => {
            out.line("k\tcoefficient");
            for (k, c) in row.iter().enumerate() {
                out.line(format!("{k}\t{c}"));
            }
        }
        Format::Pretty => {
            let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.line(parts.join(" "));
        }
    }
}

fn checks(format: Format, checks: &[Check], out: &mut Output) {
    out.failed |= checks.iter().any(|c| !c.passed);
    match format {
        Format::Json => out.json(&json!({
            "passed": checks.iter().all(|c| c.passed),
            "checks": checks,
        })),
        Format::Tsv => {
            out.line("check\tpassed\tdetail");
            for c in checks {
                out.line(format!("{}\t{}\t{}", c.name, c.passed, c.detail));
            }
        }
        Format::Pretty => {
            for c in checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    out.line(format!("{status} {}", c.name));
                } else {
                    out.line(format!("{status} {}: {}", c.name, c.detail));
                }
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            out.line(format!("{passed}/{} checks passed", checks.len()));
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FixtureKind {
    Action,
    Representation,
}

fn fixture_of_kind(name: &str, kind: FixtureKind) -> Result<Fixture, Error> {
    let f = load_fixture(name)?;
    let ok = matches!(
        (&f, kind),
        (Fixture::Action(_), FixtureKind::Action) | (Fixture::Representation(_), FixtureKind::Representation)
    );
    if ok {
        Ok(f)
    } else {
        let want = match kind {
            FixtureKind::Action => "an action",
            FixtureKind::Representation => "a representation",
        };
        Err(Error::Fixture(format!("{name} is not {want} fixture")))
    }
}

fn fixture_checks(format: Format, name: &str, kind: FixtureKind, out: &mut Output) -> Result<(), Error> {
    let f = fixture_of_kind(name, kind)?;
    checks(format, &f.verify()?, out);
    Ok(())
}

fn e2rows(
    format: Format,
    name: &str,
    smax: Option<u32>,
    tmax: Option<u32>,
    out: &mut Output,
) -> Result<(), Error> {
    let Fixture::Action(f) = fixture_of_kind(name, FixtureKind::Action)? else {
        unreachable!("kind checked")
    };
    let ga = f.graded_action()?;
    let smax = smax.unwrap_or_else(|| f.s_max());
    let tmax = tmax.unwrap_or(f.t_max);
    let table = row_dims(&ga, smax, tmax);
    match format {
        Format::Json => {
            out.json(&json!({"fixture": f.name, "group_order": f.group_order, "dims": table.to_json()}))
        }
        Format::Tsv => out.stdout.push_str(&table.to_tsv()),
        Format::Pretty => {
            let rows: Vec<Vec<usize>> = (0..=smax).rev().map(|s| table.row(s)).collect();
            let w = rows
                .iter()
                .flatten()
                .map(|d| d.to_string().len())
                .chain([tmax.to_string().len()])
                .max()
                .unwrap_or(1);
            let sw = smax.to_string().len().max(1);
            for (s, row) in (0..=smax).rev().zip(&rows) {
                let cells: Vec<String> = row.iter().map(|d| format!("{d:>w$}")).collect();
                out.line(format!("s={s:<sw$} | {}", cells.join(" ")));
            }
            let ts: Vec<String> = (0..=tmax).map(|t| format!("{t:>w$}")).collect();
            out.line(format!("{}-+-{}", "-".repeat(sw + 2), "-".repeat(ts.join(" ").len())));
            out.line(format!("{:<width$} | {}", "t", ts.join(" "), width = sw + 2));
        }
    }
    Ok(())
}

fn kbounds(format: Format, nmax: u32, out: &mut Output) -> Result<(), Error> {
    let rows = (1..=nmax)
        .map(|n| k_theory_lower_bounds(n).map(|(c, r)| (n, c, r)))
        .collect::<Result<Vec<_>, Error>>()?;
    match format {
        Format::Json => {
            let v: Vec<Value> =
                rows.iter().map(|(n, c, r)| json!({"n": n, "complex": c, "real": r})).collect();
            out.json(&Value::Array(v));
        }
        Format::Tsv | Format::Pretty => {
            out.line("n\tcomplex\treal");
            for (n, c, r) in rows {
                out.line(format!("{n}\t{c}\t{r}"));
            }
        }
    }
    Ok(())
}

fn verify_all(opts: &GlobalOptions, out: &mut Output) {
    let results = verify::run_all(opts.cokernel_options());
    out.failed = results.iter().any(|c| !c.passed);
    for c in &results {
        let _ = writeln!(out.stderr, "criterion {}: {:.3} s", c.id, c.elapsed.as_secs_f64());
    }
    match opts.format {
        Format::Json => {
            let v: Vec<Value> = results
                .iter()
                .map(|c| json!({"criterion": c.id, "title": c.title, "passed": c.passed, "details": c.details}))
                .collect();
            out.json(&json!({"passed": !out.failed, "criteria": v}));
        }
        Format::Tsv => {
            out.line("criterion\tpassed\ttitle");
            for c in &results {
                out.line(format!("{}\t{}\t{}", c.id, c.passed, c.title));
            }
        }
        Format::Pretty => {
            for c in &results {
                let status = if c.passed { "PASS" } else { "FAIL" };
                out.line(format!("criterion {:>2} {status}  {}", c.id, c.title));
                for d in &c.details {
                    out.line(format!("    {d}"));
                }
            }
            let passed = results.iter().filter(|c| c.passed).count();
            out.line(format!("{passed}/{} criteria passed", results.len()));
        }
    }
}
