//! Command-line surface of the catbase workbench.
//!
//! Exit codes: `0` all checks pass, `1` a property or theorem check failed,
//! `2` input error, `3` capacity or budget exceeded.

pub mod input;
pub mod render;

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use catbase::axioms::{validate_base, DEFAULT_BUDGET};
use catbase::classify::{classify_all, comeager_region, fundamental_witness};
use catbase::doperator::{basic_topology, cluster_operator, d_topology, validate_operator};
use catbase::equiv::{check_equivalence, compare_with_topology, DEFAULT_WITNESS_CAP};
use catbase::search::{sweep, Mode, SweepConfig};
use catbase::topo::{has_baire_property, validate_topology};
use catbase::{CategoryBase, Error, OperatorTable, SetFamily, Topology};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use input::{parse_input, parse_operator, parse_subset, InputDocument, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "catbase", version, about = "Finite category bases, D-operators and D-topologies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit the report as JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,

    /// Emit the report as aligned text (default).
    #[arg(long, global = true)]
    pub text: bool,

    /// Disjoint-subfamily budget for axiom checking.
    #[arg(long, global = true, env = "CATBASE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Check operator additivity on every pair of subsets.
    #[arg(long, global = true)]
    pub paranoid: bool,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input document; stdin when omitted or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OperatorArgs {
    /// `cluster` or a path to an operator file. Defaults to the document's
    /// operator, then to the cluster operator.
    #[arg(long)]
    pub operator: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the category-base axioms.
    Validate(InputArgs),
    /// List the singular, meager and Baire sets.
    Classify(InputArgs),
    /// Print τ(D), or the basic topology when no operator is given.
    Topology {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        operator: OperatorArgs,
    },
    /// Compare M(C), B(C) with M(τ), Ba(τ).
    Equiv {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        operator: OperatorArgs,
        /// Compare against the document's `topology` instead of τ(D).
        #[arg(long, conflicts_with = "operator")]
        input_topology: bool,
        /// Keep every mismatching set instead of the first 8 per direction.
        #[arg(long)]
        all_witnesses: bool,
    },
    /// Sweep bases exhaustively or at random and run every check.
    Sweep(SweepArgs),
    /// Witness regions and Baire decomposition for one set.
    Witness {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        operator: OperatorArgs,
        /// The set, as an element array such as `[0,2]`.
        #[arg(long)]
        set: String,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Enumerate every candidate family (default).
    #[arg(long, conflicts_with = "random")]
    pub exhaustive: bool,
    /// Draw random families.
    #[arg(long)]
    pub random: bool,
    /// Families drawn in random mode.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// One representative per isomorphism class.
    #[arg(long)]
    pub canonical: bool,
    /// Random operators per valid base.
    #[arg(long, default_value_t = 0)]
    pub operators: usize,
    /// Look for bases no topology matches.
    #[arg(long)]
    pub hunt: bool,
    /// Allow exhaustive enumeration at n = 4.
    #[arg(long)]
    pub extended: bool,
    /// Worker threads; 0 picks the number of CPUs.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Include wall-clock time in the report (breaks byte stability).
    #[arg(long)]
    pub timing: bool,
}

/// Exit code plus report.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn new(code: i32, report: Value) -> Self {
        Self { code, report }
    }
}

#[derive(Debug)]
enum Failure {
    Parse(ParseError),
    Io(String),
    Core(Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn failure_outcome(command: &str, f: Failure) -> Outcome {
    let (code, kind, message, extra) = match f {
        Failure::Parse(e) => (EXIT_INPUT, "input", e.0, Value::Null),
        Failure::Io(m) => (EXIT_INPUT, "input", m, Value::Null),
        Failure::Core(e) => {
            let message = e.to_string();
            match e {
                Error::Capacity { .. } => (EXIT_CAPACITY, "capacity", message, Value::Null),
                Error::TheoremViolation { theorem, .. } => {
                    (EXIT_CHECK_FAILED, "theorem_violation", message, json!(theorem))
                }
                Error::InvalidBase(v) => (EXIT_CHECK_FAILED, "invalid_base", message, json!(v)),
                Error::InvalidOperator(v) => {
                    (EXIT_CHECK_FAILED, "invalid_operator", message, json!(v))
                }
                _ => (EXIT_INPUT, "input", message, Value::Null),
            }
        }
    };
    let mut error = json!({ "kind": kind, "message": message });
    match kind {
        "theorem_violation" => error["theorem"] = extra,
        "invalid_base" | "invalid_operator" => error["violations"] = extra,
        _ => {}
    }
    Outcome::new(code, json!({ "command": command, "error": error }))
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load(path: &Option<PathBuf>) -> Result<InputDocument, Failure> {
    Ok(parse_input(&read_input(path)?)?)
}

fn base_of(doc: &InputDocument, budget: u64) -> Result<CategoryBase, Failure> {
    Ok(validate_base(doc.n, &doc.regions, budget)?)
}

/// Resolves `--operator`, the document operator, or the cluster operator,
/// and validates the result.
fn operator_of(
    arg: &OperatorArgs,
    doc: &InputDocument,
    base: &CategoryBase,
    paranoid: bool,
) -> Result<(OperatorTable, String), Failure> {
    let (d, label) = match arg.operator.as_deref() {
        Some("cluster") => (cluster_operator(base)?, "cluster".to_string()),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
            (parse_operator(&text, doc.n)?, format!("file:{path}"))
        }
        None => match &doc.operator {
            Some(d) => (d.clone(), "document".to_string()),
            None => (cluster_operator(base)?, "cluster".to_string()),
        },
    };
    let violations = validate_operator(base, &d, paranoid);
    if !violations.is_empty() {
        return Err(Error::InvalidOperator(violations).into());
    }
    Ok((d, label))
}

fn sets(f: &SetFamily) -> Value {
    json!(f)
}

pub fn run(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    match dispatch(cli) {
        Ok(o) => o,
        Err(f) => failure_outcome(name, f),
    }
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate(_) => "validate",
        Command::Classify(_) => "classify",
        Command::Topology { .. } => "topology",
        Command::Equiv { .. } => "equiv",
        Command::Sweep(_) => "sweep",
        Command::Witness { .. } => "witness",
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Validate(args) => {
            let doc = load(&args.input)?;
            match validate_base(doc.n, &doc.regions, cli.budget) {
                Ok(b) => Ok(Outcome::new(
                    EXIT_OK,
                    json!({
                        "command": "validate",
                        "valid": true,
                        "degenerate": b.is_degenerate(),
                        "regions": sets(b.regions()),
                        "violations": [],
                    }),
                )),
                Err(Error::InvalidBase(v)) => Ok(Outcome::new(
                    EXIT_CHECK_FAILED,
                    json!({
                        "command": "validate",
                        "valid": false,
                        "violations": v,
                    }),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Classify(args) => {
            let doc = load(&args.input)?;
            let base = base_of(&doc, cli.budget)?;
            let class = classify_all(&base)?;
            let table: Vec<Value> = catbase::power_set_iter(base.n())?
                .map(|s| {
                    json!({
                        "set": s,
                        "singular": class.is_singular(s),
                        "meager": class.is_meager(s),
                        "baire": class.is_baire(s),
                    })
                })
                .collect();
            Ok(Outcome::new(
                EXIT_OK,
                json!({
                    "command": "classify",
                    "n": base.n(),
                    "regions": sets(base.regions()),
                    "degenerate": base.is_degenerate(),
                    "singular": sets(&class.singular_class()),
                    "meager": sets(&class.meager_class()),
                    "baire": sets(&class.baire_class()),
                    "sets": table,
                }),
            ))
        }
        Command::Topology { input, operator } => {
            let doc = load(&input.input)?;
            let base = base_of(&doc, cli.budget)?;
            let (t, label) = if operator.operator.is_none() && doc.operator.is_none() {
                (basic_topology(&base)?, "cluster".to_string())
            } else {
                let (d, label) = operator_of(operator, &doc, &base, cli.paranoid)?;
                (d_topology(&base, &d)?, label)
            };
            Ok(Outcome::new(
                EXIT_OK,
                json!({ "command": "topology", "operator": label, "opens": t }),
            ))
        }
        Command::Equiv {
            input,
            operator,
            input_topology,
            all_witnesses,
        } => {
            let doc = load(&input.input)?;
            let base = base_of(&doc, cli.budget)?;
            let cap = (!all_witnesses).then_some(DEFAULT_WITNESS_CAP);
            let (report, label) = if *input_topology {
                let opens = doc.topology.clone().ok_or_else(|| {
                    ParseError("--input-topology needs a `topology` field".into())
                })?;
                let family = SetFamily::new(doc.n, opens)?;
                let t = match validate_topology(doc.n, &family) {
                    Ok(t) => t,
                    Err(v) => {
                        return Ok(Outcome::new(
                            EXIT_CHECK_FAILED,
                            json!({ "command": "equiv", "topology_violation": v }),
                        ))
                    }
                };
                (compare_with_topology(&base, &t, cap)?, "input_topology".to_string())
            } else {
                let (d, label) = operator_of(operator, &doc, &base, cli.paranoid)?;
                (check_equivalence(&base, &d, cap)?, label)
            };
            let code = if report.equivalent() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            };
            let mut v = json!(report);
            v["command"] = json!("equiv");
            v["operator"] = json!(label);
            v["contradicts_theorem"] = json!(report.contradicts_theorem());
            Ok(Outcome::new(code, v))
        }
        Command::Sweep(args) => {
            let cfg = SweepConfig {
                n: args.n,
                mode: if args.random {
                    Mode::Random
                } else {
                    Mode::Exhaustive
                },
                sample_count: args.samples,
                seed: args.seed,
                canonicalize: args.canonical,
                budget: cli.budget,
                operators_per_base: args.operators,
                hunt: args.hunt,
                extended: args.extended,
                workers: args.workers,
            };
            let report = sweep(&cfg)?;
            let code = if !report.passed() {
                EXIT_CHECK_FAILED
            } else if report.truncated {
                EXIT_CAPACITY
            } else {
                EXIT_OK
            };
            let mut v = json!(report);
            v["command"] = json!("sweep");
            if args.timing {
                v["elapsed_ms"] = json!(report.elapsed_ms as u64);
            }
            Ok(Outcome::new(code, v))
        }
        Command::Witness {
            input,
            operator,
            set,
        } => {
            let doc = load(&input.input)?;
            let base = base_of(&doc, cli.budget)?;
            let s = parse_subset(set, doc.n)?;
            let class = classify_all(&base)?;
            let (t, label): (Topology, String) =
                if operator.operator.is_none() && doc.operator.is_none() {
                    (basic_topology(&base)?, "cluster".to_string())
                } else {
                    let (d, label) = operator_of(operator, &doc, &base, cli.paranoid)?;
                    (d_topology(&base, &d)?, label)
                };
            let fundamental = fundamental_witness(&base, s)?;
            let comeager = if !class.is_meager(s) && class.is_baire(s) {
                Some(comeager_region(&base, s)?)
            } else {
                None
            };
            let decomposition = has_baire_property(&t, s).map(|d| {
                json!({ "h": d.h, "q": d.q, "r": d.r, "degenerate": d.is_degenerate() })
            });
            Ok(Outcome::new(
                EXIT_OK,
                json!({
                    "command": "witness",
                    "set": s,
                    "meager": class.is_meager(s),
                    "baire": class.is_baire(s),
                    "fundamental_witness": fundamental,
                    "comeager_region": comeager,
                    "operator": label,
                    "topology": t,
                    "baire_decomposition": decomposition,
                }),
            ))
        }
    }
}
