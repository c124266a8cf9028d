//! `finsite`: batch front end for finite sites.
//!
//! Every command reads JSON files (or bundled fixtures by name) and writes
//! canonical JSON or a one-line verdict to stdout. Exit codes: 0 success,
//! 1 validation or verdict failure, 2 usage or parse error.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use finsite::format::{PresheafFile, SieveFile, SubpresheafFile, TopologyFile};
use finsite::{
    fixtures, oracle, CategoryDescription, FiniteCategory, GrothendieckTopology, Presheaf, Sieve,
    Subpresheaf, TopologyError,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "finsite", version, about = "Finite sites, sieves and Grothendieck topologies")]
struct Cli {
    /// Saturate loaded topology files instead of rejecting non-topologies.
    #[arg(long, global = true)]
    saturate: bool,
    /// Size cap (total sieves) for enumeration-based commands.
    #[arg(long, global = true, default_value_t = 16)]
    bound: usize,
    /// List the bundled fixture corpus and exit.
    #[arg(long)]
    fixtures: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a category, topology or presheaf file.
    Validate {
        file: String,
        /// Category for topology and presheaf files; defaults to the
        /// fixture named in the file.
        #[arg(long)]
        category: Option<String>,
    },
    /// Full report: verdicts, reduced site, J_b, J_m and witnesses.
    Analyze(Site),
    /// Print the Booleanization topology.
    Booleanize(Site),
    /// Print the DeMorganization topology.
    Demorganize(Site),
    /// Print the reduced subcategory with the restricted topology.
    Reduce(Site),
    /// Close a sieve or a subpresheaf.
    Closure {
        #[command(flatten)]
        site: Site,
        /// Sieve file.
        #[arg(long, conflicts_with = "subpresheaf")]
        sieve: Option<String>,
        /// Subpresheaf file; needs --presheaf.
        #[arg(long, requires = "presheaf")]
        subpresheaf: Option<String>,
        /// Presheaf file or fixture name.
        #[arg(long)]
        presheaf: Option<String>,
    },
    /// Decide subcanonicity, with a witness sieve if it fails.
    Subcanonical(Site),
    /// Run every enumeration-based self-check on a category.
    Oracle {
        /// Category file or fixture name.
        category: String,
    },
    /// List the fixture corpus, or print one fixture file.
    Fixtures { name: Option<String> },
}

#[derive(clap::Args)]
struct Site {
    /// Category file or fixture name.
    category: String,
    /// Topology file or fixture name; the trivial topology if omitted.
    #[arg(long)]
    topology: Option<String>,
}

enum CliError {
    /// Exit code 2.
    Usage(String),
    /// Exit code 1.
    Failed(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<finsite::Error> for CliError {
    fn from(e: finsite::Error) -> Self {
        match e {
            finsite::Error::Json(e) => CliError::Usage(format!("parse error: {e}")),
            other => CliError::Failed(other.to_string()),
        }
    }
}

macro_rules! impl_failed {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::from(finsite::Error::from(e))
            }
        }
    )*};
}
impl_failed!(
    finsite::CategoryError,
    finsite::SieveError,
    finsite::TopologyError,
    finsite::PresheafError,
    finsite::ReductError,
    serde_json::Error
);

type CliResult = Result<ExitCode, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    if cli.fixtures {
        return list_fixtures();
    }
    let Some(command) = cli.command else {
        return Err(CliError::Usage("no command given; see --help".into()));
    };
    let loader = Loader {
        saturate: cli.saturate,
    };
    match command {
        Command::Validate { file, category } => loader.validate(&file, category.as_deref()),
        Command::Analyze(site) => {
            let j = loader.site(&site)?;
            emit(&finsite::analyze(&j)?)
        }
        Command::Booleanize(site) => {
            let j = loader.site(&site)?;
            emit(&finsite::booleanization(&j)?.to_file())
        }
        Command::Demorganize(site) => {
            let j = loader.site(&site)?;
            emit(&finsite::demorganization(&j)?.to_file())
        }
        Command::Reduce(site) => {
            let j = loader.site(&site)?;
            let reduced = finsite::reduced_subcategory(&j)?;
            emit(&ReduceOutput {
                kept_objects: reduced.kept_names(),
                category: reduced.category().description(),
                topology: reduced.topology().to_file(),
            })
        }
        Command::Closure {
            site,
            sieve,
            subpresheaf,
            presheaf,
        } => {
            let j = loader.site(&site)?;
            match (sieve, subpresheaf, presheaf) {
                (Some(path), None, _) => {
                    let file: SieveFile = parse(&read(&path)?)?;
                    let s = Sieve::from_names(j.category(), &file.cod, &file.arrows)?;
                    let closed = j.close_sieve(&s)?;
                    emit(&SieveClosureOutput {
                        closed: closed == s,
                        covering: j.is_covering(&s),
                        closure: SieveFile {
                            cod: file.cod,
                            arrows: closed.arrow_names(),
                        },
                    })
                }
                (None, Some(path), Some(presheaf)) => {
                    let parent = loader.presheaf(j.category(), &presheaf)?;
                    let file: SubpresheafFile = parse(&read(&path)?)?;
                    let a = Subpresheaf::from_file(&parent, &file)?;
                    let closed = a.close(&j)?;
                    emit(&SubpresheafClosureOutput {
                        closed: closed == a,
                        dense: a.is_dense(&j)?,
                        closure: closed.to_file(&file.presheaf),
                    })
                }
                _ => Err(CliError::Usage(
                    "closure needs --sieve FILE or --subpresheaf FILE --presheaf P".into(),
                )),
            }
        }
        Command::Subcanonical(site) => {
            let j = loader.site(&site)?;
            let witness = j.subcanonical_witness();
            emit(&SubcanonicalOutput {
                subcanonical: witness.is_none(),
                witness: witness.map(|s| SieveFile {
                    cod: s.category().object_name(s.codomain()).to_string(),
                    arrows: s.arrow_names(),
                }),
            })
        }
        Command::Oracle { category } => {
            let cat = loader.category(&category)?;
            let report = oracle::run(&cat, cli.bound)?;
            print_json(&report)?;
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Fixtures { name: None } => list_fixtures(),
        Command::Fixtures { name: Some(name) } => {
            let text = fixture_text(&name)
                .ok_or_else(|| CliError::Usage(format!("no fixture named `{name}`")))?;
            out(text.trim_end());
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[derive(Serialize)]
struct ReduceOutput {
    kept_objects: Vec<String>,
    category: CategoryDescription,
    topology: TopologyFile,
}

#[derive(Serialize)]
struct SieveClosureOutput {
    closure: SieveFile,
    closed: bool,
    covering: bool,
}

#[derive(Serialize)]
struct SubpresheafClosureOutput {
    closure: SubpresheafFile,
    closed: bool,
    dense: bool,
}

#[derive(Serialize)]
struct SubcanonicalOutput {
    subcanonical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<SieveFile>,
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    out(&serde_json::to_string_pretty(value)?);
    Ok(())
}

fn emit<T: Serialize>(value: &T) -> CliResult {
    print_json(value)?;
    Ok(ExitCode::SUCCESS)
}

fn list_fixtures() -> CliResult {
    for (kind, entries) in [
        ("category", fixtures::CATEGORIES),
        ("presheaf", fixtures::PRESHEAVES),
        ("topology", fixtures::TOPOLOGIES),
    ] {
        for (name, _) in entries {
            out(&format!("{kind}\t{name}"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn fixture_text(name: &str) -> Option<&'static str> {
    all_fixtures()
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, text)| *text)
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("parse error: {e}")))
}

/// Resolves arguments that name either a file on disk or a bundled fixture.
struct Loader {
    saturate: bool,
}

enum Source {
    File { label: String, text: String },
    Fixture { name: &'static str, text: &'static str },
}

impl Loader {
    fn source(&self, arg: &str, corpus: &'static [(&'static str, &'static str)]) -> Result<Source, CliError> {
        let path = Path::new(arg);
        if path.is_file() {
            let label = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or(arg)
                .to_string();
            return Ok(Source::File {
                label,
                text: read(arg)?,
            });
        }
        corpus
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(arg))
            .map(|&(name, text)| Source::Fixture { name, text })
            .ok_or_else(|| CliError::Usage(format!("`{arg}` is neither a file nor a fixture")))
    }

    fn category(&self, arg: &str) -> Result<FiniteCategory, CliError> {
        let (label, text) = match self.source(arg, fixtures::CATEGORIES)? {
            Source::File { label, text } => (label, text),
            Source::Fixture { name, text } => (name.to_string(), text.to_string()),
        };
        let desc: CategoryDescription = parse(&text)?;
        Ok(FiniteCategory::new(&label, &desc)?)
    }

    fn topology_file(&self, arg: &str) -> Result<TopologyFile, CliError> {
        match self.source(arg, fixtures::TOPOLOGIES)? {
            Source::File { text, .. } => parse(&text),
            Source::Fixture { text, .. } => parse(text),
        }
    }

    fn topology(&self, cat: &FiniteCategory, arg: &str) -> Result<GrothendieckTopology, CliError> {
        let file = self.topology_file(arg)?;
        Ok(GrothendieckTopology::from_file(cat, &file, self.saturate)?)
    }

    fn site(&self, site: &Site) -> Result<GrothendieckTopology, CliError> {
        let cat = self.category(&site.category)?;
        match &site.topology {
            Some(arg) => self.topology(&cat, arg),
            None => Ok(GrothendieckTopology::trivial(&cat)),
        }
    }

    fn presheaf(&self, cat: &FiniteCategory, arg: &str) -> Result<Presheaf, CliError> {
        let file: PresheafFile = match self.source(arg, fixtures::PRESHEAVES)? {
            Source::File { text, .. } => parse(&text)?,
            Source::Fixture { text, .. } => parse(text)?,
        };
        Ok(Presheaf::from_file(cat, &file)?)
    }

    /// Category named inside a topology or presheaf file: `--category` wins,
    /// then a fixture of that name.
    fn named_category(&self, explicit: Option<&str>, named: &str) -> Result<FiniteCategory, CliError> {
        match explicit {
            Some(arg) => self.category(arg),
            None => fixtures::category(named).ok_or_else(|| {
                CliError::Usage(format!("category `{named}` is not a fixture; pass --category"))
            }),
        }
    }

    fn validate(&self, arg: &str, category: Option<&str>) -> CliResult {
        let text = match self.source(arg, all_fixtures())? {
            Source::File { text, .. } => text,
            Source::Fixture { text, .. } => text.to_string(),
        };
        let value: serde_json::Value = parse(&text)?;
        let verdict = if value.get("covers").is_some() {
            let file: TopologyFile = parse(&text)?;
            let cat = self.named_category(category, &file.category)?;
            GrothendieckTopology::from_file(&cat, &file, self.saturate).map(|t| {
                let covering: usize = cat.objects().map(|c| t.covers(c).len()).sum();
                format!("valid: topology on {}, {covering} covering sieves", cat.label())
            })
            .map_err(|e| match e {
                TopologyError::Axiom(v) => format!("invalid: {v}"),
                other => format!("invalid: {other}"),
            })
        } else if value.get("values").is_some() {
            let file: PresheafFile = parse(&text)?;
            let cat = self.named_category(category, &file.category)?;
            Presheaf::from_file(&cat, &file)
                .map(|p| {
                    format!(
                        "valid: presheaf on {}, {} elements",
                        cat.label(),
                        p.total_elements()
                    )
                })
                .map_err(|e| format!("invalid: {e}"))
        } else {
            let desc: CategoryDescription = parse(&text)?;
            FiniteCategory::new(arg, &desc)
                .map(|c| {
                    format!(
                        "valid: {} objects, {} arrows",
                        c.num_objects(),
                        c.num_arrows()
                    )
                })
                .map_err(|e| format!("invalid: {e}"))
        };
        match verdict {
            Ok(line) => {
                out(&line);
                Ok(ExitCode::SUCCESS)
            }
            Err(line) => {
                out(&line);
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn all_fixtures() -> &'static [(&'static str, &'static str)] {
    static ALL: std::sync::OnceLock<Vec<(&'static str, &'static str)>> = std::sync::OnceLock::new();
    ALL.get_or_init(|| {
        [fixtures::CATEGORIES, fixtures::PRESHEAVES, fixtures::TOPOLOGIES].concat()
    })
}
