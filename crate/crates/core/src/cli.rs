//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation or parse error, 2 infeasible
//! solution or halted replay, 3 internal self-check failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::accounting::CostConvention;
use crate::engine::{cw_solve, initial_solution, replay, ReplayError, RouteState};
use crate::fixed::{Distance, Load};
use crate::io::{
    emit_errata, emit_savings_table, parse_instance, parse_merge_script, parse_solution_routes,
    render_dot, write_instance, ReplayReport, SolutionReport,
};
use crate::model::{paper_instance, random_instance, Instance};
use crate::oracle::{verify_routes, verify_solution};
use crate::published;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    InputError,
    Infeasible,
    InternalError,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::InputError => 1,
            ExitStatus::Infeasible => 2,
            ExitStatus::InternalError => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "frontroute",
    version,
    about = "Clarke-Wright savings routing with an exact oracle and a published-table audit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Use the embedded nine-warehouse instance.
    #[arg(long)]
    paper: bool,
    /// Instance file.
    #[arg(long, short = 'i', value_name = "PATH")]
    instance: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    Both,
    Loop,
    Mixed,
}

impl ConventionArg {
    fn conventions(self) -> Vec<CostConvention> {
        match self {
            ConventionArg::Both => CostConvention::ALL.to_vec(),
            ConventionArg::Loop => vec![CostConvention::RoundTripLoop],
            ConventionArg::Mixed => vec![CostConvention::MixedSingletonOneWay],
        }
    }
}

#[derive(Debug, Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long, short = 'o', value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run Clarke-Wright and print a JSON solution report.
    Solve {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "both")]
        convention: ConventionArg,
        #[command(flatten)]
        output: Output,
    },
    /// Print the savings matrix and the ranked savings list.
    Savings {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Replay a merge script and compare stage totals.
    Replay {
        #[command(flatten)]
        source: Source,
        /// Merge script file; defaults to the bundled published sequence.
        #[arg(long, value_name = "PATH")]
        script: Option<PathBuf>,
        /// Also refuse merges with non-positive savings.
        #[arg(long)]
        enforce_positive: bool,
        #[arg(long, value_enum, default_value = "both")]
        convention: ConventionArg,
        #[command(flatten)]
        output: Output,
    },
    /// Check a solution and report its gap to the exact optimum.
    Verify {
        #[command(flatten)]
        source: Source,
        /// JSON solution report to check; defaults to the Clarke-Wright result.
        #[arg(long, value_name = "PATH")]
        solution: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Audit the published tables and staged totals.
    Errata {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Render routes as a Graphviz DOT graph.
    Render {
        #[command(flatten)]
        source: Source,
        /// Render the one-route-per-warehouse starting point.
        #[arg(long, conflicts_with_all = ["script", "solution"])]
        initial: bool,
        /// Render the state reached by a merge script.
        #[arg(long, value_name = "PATH", conflicts_with = "solution")]
        script: Option<PathBuf>,
        /// Render the routes of a JSON solution report.
        #[arg(long, value_name = "PATH")]
        solution: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Write a random instance file.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, short = 'n')]
        n: usize,
        /// Side of the square the points are drawn from, km.
        #[arg(long, default_value = "50.0")]
        coord_range: Distance,
        #[arg(long, default_value = "0.5")]
        demand_min: Load,
        #[arg(long, default_value = "3.0")]
        demand_max: Load,
        #[arg(long, default_value = "8.0")]
        capacity: Load,
        #[command(flatten)]
        output: Output,
    },
}

struct Failure {
    status: ExitStatus,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            status: ExitStatus::InputError,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_instance(source: &Source) -> Result<Instance, Failure> {
    match &source.instance {
        Some(path) => parse_instance(&read(path)?)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => Ok(paper_instance()),
    }
}

fn load_script(
    inst: &Instance,
    path: Option<&Path>,
) -> Result<crate::engine::MergeScript, Failure> {
    let (text, origin) = match path {
        Some(p) => (read(p)?, p.display().to_string()),
        None => (
            published::MERGE_SCRIPT.to_string(),
            "bundled script".to_string(),
        ),
    };
    parse_merge_script(&text, inst).map_err(|e| Failure::input(format!("{origin}: {e}")))
}

fn load_solution(inst: &Instance, path: &Path) -> Result<Vec<Vec<crate::model::NodeId>>, Failure> {
    parse_solution_routes(&read(path)?, inst)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn halted(e: ReplayError) -> Failure {
    let status = match e {
        ReplayError::Halted { .. } => ExitStatus::Infeasible,
        ReplayError::Merge(_) => ExitStatus::InputError,
    };
    Failure {
        status,
        message: e.to_string(),
    }
}

fn solve(source: &Source, convention: ConventionArg) -> CmdResult {
    let inst = load_instance(source)?;
    let (state, trace) = cw_solve(&inst);
    let check = verify_solution(&inst, &state);
    if !check.feasible || check.loop_total != state.loop_total() {
        return Err(Failure {
            status: ExitStatus::InternalError,
            message: format!("self-check failed: {:?}", check.findings),
        });
    }
    let report = SolutionReport::build(&inst, &state, Some(&trace), &convention.conventions());
    Ok(report.to_json())
}

fn verify(source: &Source, solution: Option<&Path>) -> Result<(String, ExitStatus), Failure> {
    let inst = load_instance(source)?;
    let report = match solution {
        Some(path) => verify_routes(&inst, &load_solution(&inst, path)?),
        None => verify_solution(&inst, &cw_solve(&inst).0),
    };
    let status = if report.feasible {
        ExitStatus::Success
    } else {
        ExitStatus::Infeasible
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    Ok((text, status))
}

fn render(
    source: &Source,
    initial: bool,
    script: Option<&Path>,
    solution: Option<&Path>,
) -> CmdResult {
    let inst = load_instance(source)?;
    let state = if initial {
        initial_solution(&inst)
    } else if let Some(path) = script {
        let script = load_script(&inst, Some(path))?;
        replay(&inst, &script, false).map_err(halted)?.state
    } else if let Some(path) = solution {
        RouteState::from_routes(&inst, load_solution(&inst, path)?).map_err(Failure::input)?
    } else {
        cw_solve(&inst).0
    };
    Ok(render_dot(&inst, &state))
}

fn dispatch(command: Command) -> Result<(String, Option<PathBuf>, ExitStatus), Failure> {
    let ok = |text: String, output: Output| Ok((text, output.output, ExitStatus::Success));
    match command {
        Command::Solve {
            source,
            convention,
            output,
        } => ok(solve(&source, convention)?, output),
        Command::Savings { source, output } => {
            ok(emit_savings_table(&load_instance(&source)?), output)
        }
        Command::Replay {
            source,
            script,
            enforce_positive,
            convention,
            output,
        } => {
            let inst = load_instance(&source)?;
            let script = load_script(&inst, script.as_deref())?;
            let outcome = replay(&inst, &script, enforce_positive).map_err(halted)?;
            ok(
                ReplayReport::build(&inst, &outcome, &convention.conventions()).to_json(),
                output,
            )
        }
        Command::Verify {
            source,
            solution,
            output,
        } => {
            let (text, status) = verify(&source, solution.as_deref())?;
            Ok((text, output.output, status))
        }
        Command::Errata { source, output } => {
            let report = emit_errata(&load_instance(&source)?).map_err(Failure::input)?;
            ok(report.to_text(), output)
        }
        Command::Render {
            source,
            initial,
            script,
            solution,
            output,
        } => ok(
            render(&source, initial, script.as_deref(), solution.as_deref())?,
            output,
        ),
        Command::Gen {
            seed,
            n,
            coord_range,
            demand_min,
            demand_max,
            capacity,
            output,
        } => {
            let inst = random_instance(seed, n, coord_range, demand_min..=demand_max, capacity)
                .map_err(Failure::input)?;
            ok(write_instance(&inst), output)
        }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_color(args, out, err, false)
}

pub fn run_with_color<I, T>(
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
    color: bool,
) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let text = if color {
                e.render().ansi().to_string()
            } else {
                e.render().to_string()
            };
            if informational {
                let _ = write!(out, "{text}");
                return ExitStatus::Success;
            }
            let _ = write!(err, "{text}");
            return ExitStatus::InputError;
        }
    };

    match dispatch(cli.command) {
        Ok((text, path, status)) => {
            let written = match path {
                Some(path) => {
                    fs::write(&path, &text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(message) = written {
                report_error(err, color, &message);
                return ExitStatus::InputError;
            }
            status
        }
        Err(failure) => {
            report_error(err, color, &failure.message);
            failure.status
        }
    }
}

fn report_error(err: &mut dyn Write, color: bool, message: &str) {
    let prefix = if color {
        "\x1b[1;31merror:\x1b[0m"
    } else {
        "error:"
    };
    let _ = writeln!(err, "{prefix} {message}");
}
