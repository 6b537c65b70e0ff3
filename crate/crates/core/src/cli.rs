//! The `recamp` command line.
//!
//! Exit codes: 0 yes/ok, 1 no/invalid, 2 usage, parse, I/O, or wrong-variant
//! errors, 3 resource limits.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::election::{winners, Rule};
use crate::gadgets::{
    self, E3SatFormula, Exactly3DmInstance, GadgetError, R3dmInstance, X3cInstance,
};
use crate::io::{
    self, parse_assignment, parse_election, parse_instance, render, render_instance, RunReport,
};
use crate::model::{random_instance, verify, RandomParams, WinnerBound};
use crate::solvers::{solve, AlgorithmChoice, BruteOptions, SolveError, DEFAULT_NODE_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "recamp",
    version,
    about = "Decide and explore recampaigning instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide an instance.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_algorithm)]
        algorithm: AlgorithmChoice,
        #[arg(long, env = "RECAMP_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Check an assignment against an instance.
    Verify {
        instance: PathBuf,
        assignment: PathBuf,
    },
    /// Build a recampaigning instance from a source problem.
    Reduce {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long, value_enum)]
        to: Target,
        source: PathBuf,
        /// Scoring rule for `scoring2`.
        #[arg(long)]
        rule: Option<String>,
        /// Approval/veto parameter for `approvalL`, `vetoL`, `sat2districts`.
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Winner bound for `approvalL` and `vetoL`: a number or `unbounded`.
        #[arg(long, default_value = "3", value_parser = parse_bound)]
        bound: WinnerBound,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide an instance by exhaustive enumeration.
    Oracle {
        instance: PathBuf,
        #[arg(long, env = "RECAMP_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "borda")]
        rule: String,
        #[arg(long, default_value = "unbounded", value_parser = parse_bound)]
        bound: WinnerBound,
        #[arg(long)]
        priced: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the winners of an election, one per line.
    Winners {
        election: PathBuf,
        #[arg(long)]
        rule: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    X3c,
    R3dm,
    E33dm,
    E3sat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    #[value(name = "e1priced")]
    E1Priced,
    #[value(name = "e33dm")]
    E33dm,
    #[value(name = "approval2")]
    Approval2,
    #[value(name = "scoring2")]
    Scoring2,
    #[value(name = "approvalL")]
    ApprovalL,
    #[value(name = "vetoL")]
    VetoL,
    #[value(name = "sat2districts")]
    Sat2Districts,
}

fn parse_algorithm(s: &str) -> Result<AlgorithmChoice, String> {
    s.parse()
}

fn parse_bound(s: &str) -> Result<WinnerBound, String> {
    if s == "unbounded" {
        return Ok(WinnerBound::Unbounded);
    }
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!(
            "bound must be a positive integer or \"unbounded\", got {s:?}"
        )),
        Ok(l) => Ok(WinnerBound::AtMost(l)),
    }
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::Resource { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<GadgetError> for Failure {
    fn from(e: GadgetError) -> Self {
        let code = match e {
            GadgetError::Resource { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(Failure::usage),
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("invalid {what} document: {e}")))
}

#[derive(Serialize)]
struct VerifyReport {
    valid: bool,
    violations: Vec<String>,
    district_winners: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cost: Option<u64>,
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve {
            instance,
            algorithm,
            node_budget,
        } => run_solver(&instance, algorithm, node_budget, out),
        Command::Oracle {
            instance,
            node_budget,
        } => run_solver(&instance, AlgorithmChoice::Brute, node_budget, out),
        Command::Verify {
            instance,
            assignment,
        } => {
            let inst = parse_instance(&read(&instance)?).map_err(Failure::usage)?;
            let asg = parse_assignment(&read(&assignment)?).map_err(Failure::usage)?;
            let report = verify(&inst, &asg).map_err(Failure::usage)?;
            let doc = VerifyReport {
                valid: report.valid,
                violations: report.violations.iter().map(ToString::to_string).collect(),
                district_winners: report
                    .district_winners
                    .iter()
                    .map(|w| w.iter().map(ToString::to_string).collect())
                    .collect(),
                cost: report.total_cost,
            };
            emit(&render(&doc), None, out)?;
            Ok(if report.valid { EXIT_OK } else { EXIT_NO })
        }
        Command::Reduce {
            from,
            to,
            source,
            rule,
            t,
            bound,
            output,
        } => {
            let text = reduce(from, to, &read(&source)?, rule.as_deref(), t, bound)?;
            emit(&text, output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Gen {
            k,
            n,
            rule,
            bound,
            priced,
            seed,
            output,
        } => {
            let rule: Rule = rule.parse().map_err(Failure::usage)?;
            let mut params = RandomParams::new(k, n, rule, bound);
            params.priced = priced;
            let inst = random_instance(&params, seed).map_err(Failure::usage)?;
            emit(&render_instance(&inst), output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Winners { election, rule } => {
            let rule: Rule = rule.parse().map_err(Failure::usage)?;
            let e = parse_election(&read(&election)?).map_err(Failure::usage)?;
            let w = winners(&rule, &e).map_err(Failure::usage)?;
            let text: String = w.iter().map(|c| format!("{c}\n")).collect();
            emit(&text, None, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn run_solver(
    path: &Path,
    choice: AlgorithmChoice,
    node_budget: u64,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let inst = parse_instance(&read(path)?).map_err(Failure::usage)?;
    let start = Instant::now();
    let result = solve(&inst, choice, &BruteOptions { node_budget })?;
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    emit(&render(&RunReport::new(&result, elapsed)), None, out)?;
    Ok(if result.answer.is_yes() {
        EXIT_OK
    } else {
        EXIT_NO
    })
}

fn reduce(
    from: Source,
    to: Target,
    text: &str,
    rule: Option<&str>,
    t: u32,
    bound: WinnerBound,
) -> Result<String, Failure> {
    let exactly3 = |text: &str| -> Result<Exactly3DmInstance, Failure> {
        match from {
            Source::R3dm => Ok(gadgets::r3dm_to_exactly3(&parse_json::<R3dmInstance>(
                text, "3dm",
            )?)?),
            _ => parse_json::<Exactly3DmInstance>(text, "exactly-3 3dm"),
        }
    };
    let inst = match (from, to) {
        (Source::X3c, Target::E1Priced) => {
            gadgets::x3c_to_e1_priced(&parse_json::<X3cInstance>(text, "x3c")?)?
        }
        (Source::X3c, Target::ApprovalL) => {
            gadgets::x3c_to_approval(&parse_json(text, "x3c")?, t, bound)?
        }
        (Source::X3c, Target::VetoL) => gadgets::x3c_to_veto(&parse_json(text, "x3c")?, t, bound)?,
        (Source::R3dm, Target::E33dm) => {
            let padded = gadgets::r3dm_to_exactly3(&parse_json::<R3dmInstance>(text, "3dm")?)?;
            return Ok(render(&padded));
        }
        (Source::R3dm | Source::E33dm, Target::Approval2) => {
            gadgets::e33dm_to_1approval(&exactly3(text)?)?
        }
        (Source::R3dm | Source::E33dm, Target::Scoring2) => {
            let rule = rule.ok_or_else(|| Failure::usage("--to scoring2 needs --rule"))?;
            let rule: Rule = rule.parse().map_err(Failure::usage)?;
            gadgets::e33dm_to_scoring(&exactly3(text)?, &rule)?
        }
        (Source::E3sat, Target::Sat2Districts) => {
            gadgets::sat_to_approval_unbounded(&parse_json::<E3SatFormula>(text, "sat")?, t)?
        }
        (from, to) => {
            return Err(Failure::usage(format!(
                "no reduction from {} to {}",
                from.to_possible_value().expect("named").get_name(),
                to.to_possible_value().expect("named").get_name()
            )))
        }
    };
    Ok(io::render_instance(&inst))
}
