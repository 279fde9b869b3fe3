//! Command-line front end. [`run`] parses an argument vector, dispatches to
//! the library and returns the exit code with a text report; the `hxlab`
//! binary only prints it.
//!
//! Exit codes: 0 success or verified, 1 refuted (the report names a
//! witness), 2 usage, parse or I/O error, 3 budget exhausted or
//! inconclusive. `HX_BUDGET` overrides the default of every `--budget` flag.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dataset::{generate_dataset_file, validate_dataset_file, GenerationParams};
use crate::explain::{generalization_set, isomorphic_on, parse_explanation, parse_universe, Explanation};
use crate::formula::{parse_formula, Formula, Var};
use crate::hilbert::{
    bounded_prove, check_proof, parse_proof, soundness_audit, AxiomSet, TheoremBudget, TheoremEnumerator,
};
use crate::matrix::{
    check_tautology, classify, evaluate, parse_matrix, Assignment, LogicalMatrix, TautologyVerdict, Value,
};
use crate::turing::{
    bounded_io_equivalence, desiredone_probe, encode_desiredone, encode_machine_pair, observe, parse_machine,
    probe_inputs, reduce_halt_to_co_same, reduce_same_to_desiredone, Behavior, DesiredOneInstance,
    ProbeVerdict, TuringMachine, DEFAULT_STEP_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

// violations listed per policy before the report is cut short
const MAX_LISTED: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub report: String,
}

impl CommandResult {
    fn new(code: i32, report: impl Into<String>) -> CommandResult {
        CommandResult {
            code,
            report: report.into(),
        }
    }

    fn ok(report: impl Into<String>) -> CommandResult {
        CommandResult::new(EXIT_OK, report)
    }
}

type Outcome = Result<CommandResult, String>;

#[derive(Parser, Debug)]
#[command(
    name = "hxlab",
    version,
    about = "Logical matrices, the H_X proof system, labeled corpora and machine reductions"
)]
struct Cli {
    /// Worker threads for parallel checks (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a formula is designated under every assignment
    Taut {
        formula: String,
        /// `T`, `Tprime` or a matrix file
        #[arg(long, default_value = "T")]
        matrix: String,
    },
    /// Evaluate a formula under an assignment such as `p=0 q=1`
    Eval {
        formula: String,
        assignments: Vec<String>,
        #[arg(long, default_value = "T")]
        matrix: String,
    },
    /// Classify a formula as T, C or Neither (under T and Tprime unless given)
    Classify {
        formula: String,
        #[arg(long)]
        matrix: Vec<String>,
    },
    /// Check the axioms and modus ponens against matrices (T and Tprime unless given)
    Audit {
        #[arg(long)]
        matrix: Vec<String>,
    },
    /// Check a proof file against the axioms X1-X4
    CheckProof { file: PathBuf },
    /// Search for a proof of a formula
    Prove {
        formula: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List theorems in emission order
    Enumerate {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value_t = 3)]
        pool_size: usize,
        /// Print a proof under each theorem
        #[arg(long)]
        proofs: bool,
    },
    /// Generate a labeled corpus file and its manifest
    GenDataset {
        #[arg(long, default_value_t = 1000)]
        per_class: usize,
        #[arg(long, default_value_t = 20)]
        max_size: usize,
        #[arg(long, default_value_t = 3)]
        pool_size: usize,
        #[arg(long, default_value_t = 1)]
        wrapper_depth: usize,
        /// Cap on theorems drawn from the prover (default: none)
        #[arg(long)]
        max_theorems: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Validate a corpus file (under T and Tprime unless given)
    ValidateDataset {
        file: PathBuf,
        #[arg(long)]
        matrix: Vec<String>,
    },
    /// Check whether two explanations are isomorphic on a known set
    Iso {
        #[arg(long)]
        known: PathBuf,
        #[arg(long = "explain", num_args = 1, required = true)]
        explain: Vec<PathBuf>,
    },
    /// Compute the generalization and adversarial sets
    Analyze {
        #[arg(long)]
        universe: PathBuf,
        #[arg(long)]
        known: PathBuf,
        #[arg(long = "explain", num_args = 1, required = true)]
        explain: Vec<PathBuf>,
    },
    /// Turing machine tools
    Tm {
        #[command(subcommand)]
        command: TmCommand,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Number of theorems to emit
    #[arg(long, env = "HX_BUDGET", default_value_t = 10_000)]
    budget: usize,
    #[arg(long, default_value_t = 20)]
    max_size: usize,
}

#[derive(Args, Debug)]
struct StepArgs {
    /// Step budget per run
    #[arg(long, env = "HX_BUDGET", default_value_t = DEFAULT_STEP_BUDGET)]
    budget: u64,
    /// Compare on all binary inputs up to this length
    #[arg(long, default_value_t = 6)]
    probe_len: usize,
}

#[derive(Subcommand, Debug)]
enum TmCommand {
    /// Run a machine on a binary input
    Sim {
        machine: PathBuf,
        #[arg(default_value = "")]
        input: String,
        #[arg(long, env = "HX_BUDGET", default_value_t = DEFAULT_STEP_BUDGET)]
        budget: u64,
    },
    /// Look for an input on which two machines observably differ
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        steps: StepArgs,
    },
    /// Build reduction outputs
    Reduce {
        #[command(subcommand)]
        reduction: Reduction,
    },
    /// Run a learner on a target's data and compare its output with the target
    Probe {
        learner: PathBuf,
        target: PathBuf,
        /// Known inputs, comma separated
        #[arg(long, value_delimiter = ',')]
        inputs: Vec<String>,
        #[command(flatten)]
        steps: StepArgs,
    },
}

#[derive(Subcommand, Debug)]
enum Reduction {
    /// <M, w> to <looper, probe>: M halts on w iff the two differ
    HaltToSame {
        machine: PathBuf,
        #[arg(default_value = "")]
        input: String,
        /// Print the tuple encoding instead of machine texts
        #[arg(long)]
        encoded: bool,
    },
    /// <M1, M2> to <A, M1, {}>: the pair is equivalent iff A learns M1
    SameToDesiredone {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        encoded: bool,
    },
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return CommandResult::new(code, e.render().to_string().trim_end());
        }
    };
    let outcome = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(format!("cannot start {n} workers: {e}")),
        },
        None => dispatch(cli.command),
    };
    outcome.unwrap_or_else(|msg| CommandResult::new(EXIT_USAGE, format!("error: {msg}")))
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Taut { formula, matrix } => taut(&formula, &matrix),
        Command::Eval {
            formula,
            assignments,
            matrix,
        } => eval(&formula, &assignments, &matrix),
        Command::Classify { formula, matrix } => classify_cmd(&formula, &matrix),
        Command::Audit { matrix } => audit(&matrix),
        Command::CheckProof { file } => check_proof_cmd(&file),
        // search only needs most general theorems, so no pool instances
        Command::Prove { formula, search } => prove(&formula, budget(&search, 0)),
        Command::Enumerate {
            search,
            pool_size,
            proofs,
        } => enumerate(budget(&search, pool_size), proofs),
        Command::GenDataset {
            per_class,
            max_size,
            pool_size,
            wrapper_depth,
            max_theorems,
            out,
        } => gen_dataset(
            &out,
            GenerationParams {
                per_class,
                budget: TheoremBudget {
                    max_theorems: max_theorems.unwrap_or(usize::MAX),
                    max_size,
                    pool_size,
                },
                wrapper_depth,
            },
        ),
        Command::ValidateDataset { file, matrix } => validate(&file, &matrix),
        Command::Iso { known, explain } => iso(&known, &explain),
        Command::Analyze {
            universe,
            known,
            explain,
        } => analyze(&universe, &known, &explain),
        Command::Tm { command } => tm(command),
    }
}

fn budget(search: &SearchArgs, pool_size: usize) -> TheoremBudget {
    TheoremBudget {
        max_theorems: search.budget,
        max_size: search.max_size,
        pool_size,
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn formula(text: &str) -> Result<Formula, String> {
    parse_formula(text).map_err(|e| e.to_string())
}

/// A built-in name or a matrix file.
fn matrix(which: &str) -> Result<LogicalMatrix, String> {
    if let Some(m) = LogicalMatrix::builtin(which) {
        return Ok(m);
    }
    let path = Path::new(which);
    if !path.exists() {
        return Err(format!("unknown matrix {which:?}: not T, Tprime or a file"));
    }
    parse_matrix(&read(path)?).map_err(|e| format!("{which}: {e}"))
}

fn matrices(names: &[String]) -> Result<Vec<(String, LogicalMatrix)>, String> {
    let defaults = ["T".to_string(), "Tprime".to_string()];
    let names = if names.is_empty() { &defaults[..] } else { names };
    names.iter().map(|s| Ok((s.clone(), matrix(s)?))).collect()
}

fn taut(text: &str, which: &str) -> Outcome {
    let f = formula(text)?;
    let m = matrix(which)?;
    Ok(match check_tautology(&f, &m).map_err(|e| e.to_string())? {
        TautologyVerdict::Tautology => CommandResult::ok("tautology"),
        TautologyVerdict::Counterexample { assignment, value } => {
            CommandResult::new(EXIT_REFUTED, format!("counterexample {assignment} value {value}"))
        }
    })
}

fn eval(text: &str, assignments: &[String], which: &str) -> Outcome {
    let f = formula(text)?;
    let m = matrix(which)?;
    let mut a = Assignment::new();
    for item in assignments
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.is_empty())
    {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected `var=value`, found {item:?}"))?;
        let var = Var::new(name.trim()).map_err(|e| format!("bad variable {:?}", e.0))?;
        let value: Value = value
            .trim()
            .parse()
            .map_err(|_| format!("bad truth value {value:?}"))?;
        a.set(var, value);
    }
    let v = evaluate(&f, &m, &a).map_err(|e| e.to_string())?;
    let status = if m.is_designated(v) {
        "designated"
    } else {
        "undesignated"
    };
    Ok(CommandResult::ok(format!("value {v} ({status})")))
}

fn classify_cmd(text: &str, names: &[String]) -> Outcome {
    let f = formula(text)?;
    let mut report = String::new();
    for (name, m) in matrices(names)? {
        let c = classify(&f, &m).map_err(|e| e.to_string())?;
        writeln!(report, "{name}: {c}").unwrap();
    }
    Ok(CommandResult::ok(report.trim_end()))
}

fn audit(names: &[String]) -> Outcome {
    let axioms = AxiomSet::hx();
    let mut report = String::new();
    let mut passed = true;
    for (name, m) in matrices(names)? {
        let r = soundness_audit(&axioms, &m).map_err(|e| e.to_string())?;
        passed &= r.passed();
        writeln!(report, "{name}:\n{r}").unwrap();
    }
    let code = if passed { EXIT_OK } else { EXIT_REFUTED };
    Ok(CommandResult::new(code, report.trim_end()))
}

fn check_proof_cmd(path: &Path) -> Outcome {
    let proof = parse_proof(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(match check_proof(&proof, &AxiomSet::hx()) {
        Ok(()) => CommandResult::ok(format!(
            "valid proof of {} ({} steps)",
            proof.conclusion().expect("checked proofs are non-empty"),
            proof.len()
        )),
        Err(rejection) => CommandResult::new(EXIT_REFUTED, rejection.to_string()),
    })
}

fn prove(text: &str, budget: TheoremBudget) -> Outcome {
    let target = formula(text)?;
    Ok(match bounded_prove(&target, &AxiomSet::hx(), budget) {
        Some(proof) => {
            CommandResult::ok(format!("proof of {target} ({} steps)\n{proof}", proof.len()).trim_end())
        }
        None => CommandResult::new(
            EXIT_INCONCLUSIVE,
            format!(
                "no proof of {target} among the first {} theorems",
                budget.max_theorems
            ),
        ),
    })
}

fn enumerate(budget: TheoremBudget, proofs: bool) -> Outcome {
    let mut en = TheoremEnumerator::new(AxiomSet::hx(), budget);
    let mut report = String::new();
    while let Some(th) = en.next_theorem() {
        writeln!(report, "{}\t{}", th.index + 1, th.formula).unwrap();
        if proofs {
            for line in en.proof(th.index).to_string().lines() {
                writeln!(report, "    {line}").unwrap();
            }
        }
    }
    if en.is_saturated() {
        writeln!(report, "# saturated after {} theorems", en.emitted()).unwrap();
    }
    Ok(CommandResult::ok(report.trim_end()))
}

fn gen_dataset(out: &Path, params: GenerationParams) -> Outcome {
    let manifest = generate_dataset_file(out, params).map_err(|e| format!("{}: {e}", out.display()))?;
    let code = if manifest.complete {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    let mut report = format!("wrote {}\n{}", out.display(), manifest.render());
    if !manifest.complete {
        report.push_str("theorem stream exhausted before both classes were full\n");
    }
    Ok(CommandResult::new(code, report.trim_end()))
}

fn validate(path: &Path, names: &[String]) -> Outcome {
    let named = matrices(names)?;
    let refs: Vec<&LogicalMatrix> = named.iter().map(|(_, m)| m).collect();
    let reports = validate_dataset_file(path, &refs).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut text = String::new();
    let mut passed = true;
    for ((name, _), r) in named.iter().zip(&reports) {
        passed &= r.passed();
        writeln!(
            text,
            "policy {name}: rows {} (T {}, C {})",
            r.rows, r.count_t, r.count_c
        )
        .unwrap();
        for v in r.violations.iter().take(MAX_LISTED) {
            writeln!(
                text,
                "  line {}: {} labeled {} classifies {}",
                v.line, v.example.formula, v.example.label, v.classification
            )
            .unwrap();
        }
        if r.violations.len() > MAX_LISTED {
            writeln!(text, "  ... {} more", r.violations.len() - MAX_LISTED).unwrap();
        }
        writeln!(text, "  violations: {}", r.violations.len()).unwrap();
    }
    let code = if passed { EXIT_OK } else { EXIT_REFUTED };
    Ok(CommandResult::new(code, text.trim_end()))
}

fn explanations(paths: &[PathBuf]) -> Result<Vec<Explanation>, String> {
    paths
        .iter()
        .map(|p| parse_explanation(&read(p)?).map_err(|e| format!("{}: {e}", p.display())))
        .collect()
}

fn known_set(path: &Path) -> Result<Vec<String>, String> {
    let u = parse_universe(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(u.elements().to_vec())
}

fn iso(known: &Path, paths: &[PathBuf]) -> Outcome {
    let [a, b] = &explanations(paths)?[..] else {
        return Err(format!(
            "iso takes exactly two --explain files, got {}",
            paths.len()
        ));
    };
    let known = known_set(known)?;
    if let Some(g) = isomorphic_on(a, b, &known).map_err(|e| e.to_string())? {
        return Ok(CommandResult::ok(format!(
            "isomorphic on {} elements: {g}",
            known.len()
        )));
    }
    // the shortest prefix that breaks the bijection ends at the witness
    for k in 1..=known.len() {
        if isomorphic_on(a, b, &known[..k])
            .map_err(|e| e.to_string())?
            .is_none()
        {
            let e = &known[k - 1];
            return Ok(CommandResult::new(
                EXIT_REFUTED,
                format!(
                    "not isomorphic: {e} is labeled {} and {}, which conflicts with earlier elements",
                    a.label(e).unwrap_or("?"),
                    b.label(e).unwrap_or("?")
                ),
            ));
        }
    }
    unreachable!("a set without an isomorphism has a prefix without one")
}

fn analyze(universe: &Path, known: &Path, paths: &[PathBuf]) -> Outcome {
    if paths.len() < 2 {
        return Err("analyze needs at least two --explain files".into());
    }
    let u = parse_universe(&read(universe)?).map_err(|e| format!("{}: {e}", universe.display()))?;
    let known = known_set(known)?;
    let expls = explanations(paths)?;
    let report = generalization_set(&expls, &known, &u).map_err(|e| e.to_string())?;
    Ok(CommandResult::ok(report.to_string()))
}

fn machine(path: &Path) -> Result<TuringMachine, String> {
    parse_machine(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn tm(command: TmCommand) -> Outcome {
    match command {
        TmCommand::Sim {
            machine: path,
            input,
            budget,
        } => {
            let m = machine(&path)?;
            Ok(match observe(&m, &input, budget).map_err(|e| e.to_string())? {
                Behavior::Halted { output, steps } => {
                    CommandResult::ok(format!("halted after {steps} steps\noutput: {output}"))
                }
                b @ Behavior::Diverges { .. } => CommandResult::ok(b.to_string()),
                b @ Behavior::Unknown { .. } => CommandResult::new(EXIT_INCONCLUSIVE, b.to_string()),
            })
        }
        TmCommand::Equiv { first, second, steps } => {
            let (a, b) = (machine(&first)?, machine(&second)?);
            let verdict = bounded_io_equivalence(&a, &b, &probe_inputs(steps.probe_len), steps.budget)
                .map_err(|e| e.to_string())?;
            let code = if verdict.is_different() {
                EXIT_REFUTED
            } else {
                EXIT_INCONCLUSIVE
            };
            Ok(CommandResult::new(code, verdict.to_string()))
        }
        TmCommand::Reduce { reduction } => Ok(CommandResult::ok(
            match reduction {
                Reduction::HaltToSame {
                    machine: path,
                    input,
                    encoded,
                } => {
                    if let Some(c) = input.chars().find(|c| *c != '0' && *c != '1') {
                        return Err(format!("input must be binary, found {c:?}"));
                    }
                    let (m1, m2) = reduce_halt_to_co_same(&machine(&path)?, &input);
                    if encoded {
                        encode_machine_pair(&m1, &m2)
                    } else {
                        format!("# M1\n{}# M2\n{}", m1.render(), m2.render())
                    }
                }
                Reduction::SameToDesiredone {
                    first,
                    second,
                    encoded,
                } => {
                    let inst = reduce_same_to_desiredone(&machine(&first)?, &machine(&second)?);
                    if encoded {
                        encode_desiredone(&inst)
                    } else {
                        format!(
                            "# learner\n{}# target\n{}# known inputs: none",
                            inst.learner.render(),
                            inst.target.render()
                        )
                    }
                }
            }
            .trim_end(),
        )),
        TmCommand::Probe {
            learner,
            target,
            inputs,
            steps,
        } => {
            let inst = DesiredOneInstance {
                learner: machine(&learner)?,
                target: machine(&target)?,
                inputs,
            };
            match desiredone_probe(&inst, &probe_inputs(steps.probe_len), steps.budget) {
                Ok(v @ ProbeVerdict::ProvenDifferent(_)) => {
                    Ok(CommandResult::new(EXIT_REFUTED, v.to_string()))
                }
                Ok(v) => Ok(CommandResult::new(EXIT_INCONCLUSIVE, v.to_string())),
                Err(e) => Err(e.to_string()),
            }
        }
    }
}
