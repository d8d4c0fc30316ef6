use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use stonespec::corpus::CorpusLattice;
use stonespec::doc::{load_family, load_ideal, load_lattice, load_presheaf, load_space, FamilyDoc};
use stonespec::lattice::DEFAULT_MAX_ELEMENTS;
use stonespec::presheaf::horizontal_sum_triviality;
use stonespec::quotient::spectrum_correspondence;
use stonespec::random::rng;
use stonespec::spectral::{measure_properties, observable_roundtrip};
use stonespec::spectrum::{
    atom_quasipoints, distributivity_equivalences, generic_quasipoints, min_element, points,
};
use stonespec::suite::{run_suite, SuiteConfig};
use stonespec::topology::{analyse_space, topology_suite, MAX_ENUMERATED_POINTS};
use stonespec::{dot, Error, Lattice, OrthoLattice, StoneSpectrum};

#[derive(Parser)]
#[command(
    name = "stonespec",
    version,
    about = "Stone spectra of finite lattices and ortholattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest lattice accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_size: usize,
    /// Enumerate everything instead of sampling.
    #[arg(long, global = true)]
    exhaustive: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Distributive,
    Modular,
    Orthomodular,
    Boolean,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice document and run its consistency checks.
    Check {
        lattice: String,
        /// Also require these properties.
        #[arg(long, value_enum)]
        expect: Vec<Property>,
    },
    /// Quasipoints and basis sets of the Stone spectrum.
    Spectrum { lattice: String },
    /// Boolean sectors and Boolean quasipoints of an orthomodular lattice.
    Sectors { lattice: String },
    /// Quotient of a Boolean algebra by an ideal and the spectrum correspondence.
    Quotient { lattice: String, ideal: String },
    /// Regular opens, meagre sets and quasipoints of a finite space.
    Topology {
        space: Option<String>,
        /// Check every topology on this many points instead.
        #[arg(long, conflicts_with = "space")]
        points: Option<usize>,
    },
    /// Round trip of a spectral family through observable functions.
    Spectral { lattice: String, family: String },
    /// Stalks, etale space and sheafification of a presheaf.
    Sheafify {
        /// `corpus:NAME`, or a lattice followed by a presheaf document.
        #[arg(num_args = 0..=2)]
        inputs: Vec<String>,
        /// Search presheaves on MO_n instead.
        #[arg(long, conflicts_with = "inputs")]
        mo: Option<usize>,
        /// Largest set size for `--mo`.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Seeded property suites; `all` or criterion names or numbers.
    Suite {
        #[arg(default_value = "all")]
        criteria: Vec<String>,
    },
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    witness: Value,
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Vec<String>,
    passed: bool,
    checks: Vec<Check>,
    data: Value,
}

struct Outcome {
    checks: Vec<Check>,
    data: Value,
    dot: Option<String>,
}

impl Outcome {
    fn new(data: Value) -> Self {
        Outcome {
            checks: Vec::new(),
            data,
            dot: None,
        }
    }

    fn check(&mut self, name: &str, passed: bool, witness: Value) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            witness,
        });
    }
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalContradiction(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, inputs) = describe(&cli.command);
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let passed = outcome.checks.iter().all(|c| c.passed);
    let text = match cli.format {
        Format::Dot => match outcome.dot {
            Some(d) => d,
            None => {
                eprintln!("error: dot output is not available for `{name}`");
                return ExitCode::from(2);
            }
        },
        Format::Json => {
            let report = Report {
                command: name.clone(),
                inputs,
                passed,
                checks: outcome.checks,
                data: outcome.data,
            };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Text => render_text(&name, &inputs, passed, &outcome.checks, &outcome.data),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn describe(command: &Command) -> (String, Vec<String>) {
    match command {
        Command::Check { lattice, .. } => ("check".into(), vec![lattice.clone()]),
        Command::Spectrum { lattice } => ("spectrum".into(), vec![lattice.clone()]),
        Command::Sectors { lattice } => ("sectors".into(), vec![lattice.clone()]),
        Command::Quotient { lattice, ideal } => {
            ("quotient".into(), vec![lattice.clone(), ideal.clone()])
        }
        Command::Topology { space, points } => (
            "topology".into(),
            space
                .iter()
                .cloned()
                .chain(points.map(|p| format!("--points {p}")))
                .collect(),
        ),
        Command::Spectral { lattice, family } => {
            ("spectral".into(), vec![lattice.clone(), family.clone()])
        }
        Command::Sheafify { inputs, mo, k } => {
            let mut v = inputs.clone();
            if let Some(n) = mo {
                v.push(format!("--mo {n} --k {k}"));
            }
            ("sheafify".into(), v)
        }
        Command::Suite { criteria } => ("suite".into(), criteria.clone()),
    }
}

fn render_text(
    name: &str,
    inputs: &[String],
    passed: bool,
    checks: &[Check],
    data: &Value,
) -> String {
    let mut out = format!("stonespec {name} {}\n", inputs.join(" "));
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        if c.witness.is_null() {
            out.push_str(&format!("{mark} {}\n", c.name));
        } else {
            out.push_str(&format!("{mark} {}  witness: {}\n", c.name, c.witness));
        }
    }
    out.push_str(&format!(
        "result: {}\n",
        if passed { "pass" } else { "fail" }
    ));
    out.push_str(&serde_json::to_string_pretty(data).expect("data serializes"));
    out.push('\n');
    out
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Check { lattice, expect } => check(&load_lattice(lattice, cli.max_size)?, expect),
        Command::Spectrum { lattice } => spectrum(&load_lattice(lattice, cli.max_size)?),
        Command::Sectors { lattice } => sectors(&load_lattice(lattice, cli.max_size)?),
        Command::Quotient { lattice, ideal } => {
            let c = load_lattice(lattice, cli.max_size)?;
            let b = need_ortho(&c)?;
            let gens = load_ideal(ideal, b)?;
            let (q, report) = spectrum_correspondence(b, &gens)?;
            let mut o = Outcome::new(json!({
                "ideal": q.ideal.members,
                "classes": q.classes,
                "projection": q.projection,
                "correspondence": report,
            }));
            o.check("correspondence", report.holds(), Value::Null);
            Ok(o)
        }
        Command::Topology { space, points } => topology(cli, space.as_deref(), *points),
        Command::Spectral { lattice, family } => spectral(cli, lattice, family),
        Command::Sheafify { inputs, mo, k } => sheafify(cli, inputs, *mo, *k),
        Command::Suite { criteria } => {
            let report = run_suite(
                criteria,
                SuiteConfig {
                    seed: cli.seed,
                    exhaustive: cli.exhaustive,
                },
            )
            .map_err(Failure::Input)?;
            let mut o =
                Outcome::new(serde_json::to_value(&report).expect("suite report serializes"));
            for c in &report.criteria {
                o.check(&format!("{} {}", c.id, c.name), c.passed, Value::Null);
            }
            Ok(o)
        }
    }
}

fn need_ortho(c: &CorpusLattice) -> Result<&OrthoLattice, Failure> {
    c.ortho()
        .ok_or_else(|| Failure::Input("this command needs an orthocomplement (\"perp\")".into()))
}

fn quasipoint_check(o: &mut Outcome, l: &Lattice) {
    let generic = generic_quasipoints(l);
    let atoms = atom_quasipoints(l);
    o.check(
        "quasipoints_are_atom_filters",
        generic == atoms,
        Value::Null,
    );
}

fn check(c: &CorpusLattice, expect: &[Property]) -> Result<Outcome, Failure> {
    let l = c.lattice();
    let classes = l.classify();
    let mut data = json!({
        "n": l.len(),
        "names": l.names(),
        "covers": l.covers(),
        "atoms": l.atoms(),
        "classification": classes,
    });
    let mut o = Outcome::new(Value::Null);
    quasipoint_check(&mut o, l);
    if let Some(ol) = c.ortho() {
        let nakamura = ol.nakamura_report();
        o.check(
            "commutativity_symmetry_matches_orthomodularity",
            nakamura.is_ok(),
            Value::Null,
        );
        data["ortho"] = json!({
            "perp": ol.perp_table(),
            "boolean": ol.is_boolean(),
            "nakamura": nakamura.ok(),
        });
        if ol.is_orthomodular() {
            let d = distributivity_equivalences(ol)?;
            o.check(
                "distributivity_characterizations_agree",
                d.all_agree(),
                Value::Null,
            );
            data["distributivity_equivalences"] = json!(d);
        }
    }
    for p in expect {
        let (name, passed, witness) = match p {
            Property::Distributive => (
                "distributive",
                classes.is_distributive,
                json!(classes.distributive_witness),
            ),
            Property::Modular => (
                "modular",
                classes.is_modular,
                json!(classes.modular_witness),
            ),
            Property::Orthomodular => {
                let w = need_ortho(c)?.orthomodular_witness();
                ("orthomodular", w.is_none(), json!(w))
            }
            Property::Boolean => {
                let ol = need_ortho(c)?;
                (
                    "boolean",
                    ol.is_boolean(),
                    json!(classes.distributive_witness),
                )
            }
        };
        o.check(&format!("expect_{name}"), passed, witness);
    }
    o.data = data;
    o.dot = Some(dot::lattice_dot(l));
    Ok(o)
}

fn spectrum(c: &CorpusLattice) -> Result<Outcome, Failure> {
    let l = c.lattice();
    let mut o = Outcome::new(Value::Null);
    quasipoint_check(&mut o, l);
    let s = StoneSpectrum::from_atoms(l);
    let clopen = (0..l.len()).all(|a| s.basis_set_is_clopen(a));
    o.check("basis_sets_clopen", clopen, Value::Null);
    let minima: Vec<&str> = s
        .quasipoints
        .iter()
        .map(|q| l.name(min_element(l, q)))
        .collect();
    let mut data = json!({
        "quasipoints": s.quasipoints,
        "minima": minima,
        "basis": s.basis,
        "points": points(l, &s),
    });
    if let Some(ol) = c.ortho().filter(|ol| ol.is_orthomodular()) {
        let d = distributivity_equivalences(ol)?;
        o.check(
            "distributivity_characterizations_agree",
            d.all_agree(),
            Value::Null,
        );
        data["distributivity_equivalences"] = json!(d);
    }
    o.data = data;
    o.dot = Some(dot::spectrum_dot(l, &s));
    Ok(o)
}

fn sectors(c: &CorpusLattice) -> Result<Outcome, Failure> {
    let ol = need_ortho(c)?;
    let sectors = ol.boolean_sectors()?;
    let bq = ol.boolean_quasipoints()?;
    let mut o = Outcome::new(json!({
        "sectors": sectors.iter().map(|s| s.elements).collect::<Vec<_>>(),
        "center": ol.center(),
        "boolean_quasipoints": bq,
    }));
    let boolean = sectors.iter().all(|s| {
        ol.sublattice(&s.elements)
            .ok()
            .map(|(sub, _)| sub.classify().is_distributive)
            .unwrap_or(false)
    });
    o.check("sectors_distributive", boolean, Value::Null);
    o.check("boolean_quasipoints", bq.holds(), Value::Null);
    o.dot = Some(dot::lattice_dot(ol));
    Ok(o)
}

fn topology(cli: &Cli, space: Option<&str>, points: Option<usize>) -> Result<Outcome, Failure> {
    if let Some(n) = points {
        let mut r = rng(cli.seed);
        let sample = (n == MAX_ENUMERATED_POINTS && !cli.exhaustive).then_some((40, &mut r));
        let report = topology_suite(n, sample)?;
        let mut o = Outcome::new(json!(report));
        o.check(
            "topology_suite",
            report.holds(),
            json!(report.failures.first()),
        );
        return Ok(o);
    }
    let space = load_space(
        space.ok_or_else(|| Failure::Input("give a space document or --points".into()))?,
    )?;
    let r = analyse_space(&space)?;
    let mut o = Outcome::new(json!(r));
    o.check("regular_open_algebra", r.regular_open.holds(), Value::Null);
    o.check(
        "open_lattice_distributive",
        r.open_lattice_distributive,
        Value::Null,
    );
    o.check("rho_bijective", r.rho.holds(), Value::Null);
    o.check("meagre_correspondence", r.meagre.holds(), Value::Null);
    let bad: Vec<usize> = r
        .quasipoints
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.holds())
        .map(|(i, _)| i)
        .collect();
    o.check(
        "boundary_criterion",
        bad.is_empty(),
        if bad.is_empty() {
            Value::Null
        } else {
            json!(bad)
        },
    );
    Ok(o)
}

fn spectral(cli: &Cli, lattice: &str, family: &str) -> Result<Outcome, Failure> {
    let c = load_lattice(lattice, cli.max_size)?;
    let l = c.lattice();
    let f = load_family(family, l)?;
    let rt = observable_roundtrip(l, &f)?;
    let s = StoneSpectrum::from_atoms(l);
    let obs = f.observable(l, &s);
    let ci = obs.completely_increasing();
    let text = |v: &Option<stonespec::Rational>| v.as_ref().map(|x| x.to_string());
    let mut data = json!({
        "family": FamilyDoc::from_family(&f),
        "observable_on_quasipoints": obs.on_quasipoints.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "completely_increasing": ci.values.iter().map(text).collect::<Vec<_>>(),
        "roundtrip": rt,
    });
    let mut o = Outcome::new(Value::Null);
    o.check("roundtrip", rt.holds(), json!(rt.intersection_witness));
    if let Some(ol) = c.ortho().filter(|ol| ol.is_orthomodular()) {
        let m = measure_properties(ol, &f, &mut rng(cli.seed), 50)?;
        o.check("spectral_measure", m.holds(), Value::Null);
        data["measure"] = json!(m);
    }
    o.data = data;
    Ok(o)
}

fn sheafify(cli: &Cli, inputs: &[String], mo: Option<usize>, k: usize) -> Result<Outcome, Failure> {
    if let Some(n) = mo {
        let r = horizontal_sum_triviality(n, k)?;
        let mut o = Outcome::new(json!(r));
        o.check(
            "complete_presheaves_trivial",
            r.holds(),
            json!(r.counterexamples.first()),
        );
        return Ok(o);
    }
    let p = match inputs {
        [single] => load_presheaf(single, None)?,
        [lattice, presheaf] => {
            let c = load_lattice(lattice, cli.max_size)?;
            load_presheaf(presheaf, Some(c.lattice()))?
        }
        _ => {
            return Err(Failure::Input(
                "give `corpus:NAME`, a lattice and a presheaf, or --mo".into(),
            ))
        }
    };
    let completeness = p.is_complete()?;
    let etale = p.etale_space()?;
    let sheaf = p.sheafify()?;
    let l = p.lattice();
    let mut o = Outcome::new(json!({
        "presheaf": p.to_doc(),
        "completeness": completeness,
        "stalk_sizes": etale.stalks.iter().map(|s| s.len()).collect::<Vec<_>>(),
        "etale_points": etale.points.len(),
        "sheaf": sheaf.sheaf.to_doc(),
        "sheaf_completeness": sheaf.completeness,
        "comparisons": sheaf.comparisons,
        "atomistic": sheaf.atomistic,
        "comparison_bijective": sheaf.comparison_bijective(),
    }));
    o.check(
        "germ_equivalence",
        etale.stalks.iter().all(|s| s.equivalence_ok),
        Value::Null,
    );
    o.check(
        "stalks_match_minimal_element",
        etale.stalks.iter().all(|s| s.oracle_ok),
        Value::Null,
    );
    o.check(
        "projection_bijective_on_basis",
        etale.projection_bijective(),
        Value::Null,
    );
    o.check(
        "sheaf_complete",
        sheaf.completeness.complete,
        json!(sheaf.completeness.witness),
    );
    if completeness.complete && sheaf.atomistic {
        let bad: Vec<usize> = sheaf
            .comparisons
            .iter()
            .filter(|c| !(c.injective && c.surjective))
            .map(|c| c.element)
            .collect();
        o.check(
            "comparison_bijective",
            bad.is_empty(),
            if bad.is_empty() {
                Value::Null
            } else {
                json!(bad)
            },
        );
    }
    o.dot = Some(dot::etale_dot(l, &etale, |q, germ| {
        let s = &etale.stalks[q];
        p.set(s.minimum)[s.canonical[germ]].clone()
    }));
    Ok(o)
}
