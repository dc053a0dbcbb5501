use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pauli_cycles::contextuality::{
    conjoined_counterexample, enumerate_cycle_inequalities, nc_membership, quantum_value,
    tsirelson_state, vorobev_gate, CycleInequality, EmpiricalModel, Membership,
};
use pauli_cycles::graph::{Graph, Scenario};
use pauli_cycles::realization::{big_cycle, big_path, construct_acc, construct_c2, Realization};
use pauli_cycles::report::RunReport;
use pauli_cycles::search::{find_realization, realizability_table, SearchConfig, Target, Verdict};
use pauli_cycles::{Error, Result};

const VIOLATION_TOL: f64 = 1e-9;

/// Pauli realizations of cycle scenarios and their contextuality analysis.
///
/// Reports go to stdout as JSON. Exit codes: 0 success, 1 negative search
/// verdict, 2 usage error, malformed input or exhausted budget.
#[derive(Parser)]
#[command(name = "pauli-cycles", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Kind {
    Acc,
    C2,
    Big,
    PathConcat,
}

#[derive(Subcommand)]
enum Command {
    /// Build a faithful realization from one of the explicit constructions.
    Construct {
        kind: Kind,
        #[arg(long)]
        m: usize,
        /// Also write the bare realization JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Backtracking search for a faithful cycle or path realization.
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long, conflicts_with = "path", required_unless_present = "path")]
        cycle: Option<usize>,
        #[arg(long)]
        path: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Node budget; scientific notation such as 1e9 is accepted.
        #[arg(long, value_parser = parse_count)]
        budget: Option<u64>,
        /// Disable the symmetry cut.
        #[arg(long)]
        no_canonical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realizability verdict for every cycle size up to `--n-max`.
    Table {
        #[arg(long)]
        m: usize,
        /// Defaults to 3m + 1, one past the largest possible size.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, value_parser = parse_count)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Quantum values of cycle inequalities for a realization.
    Bound {
        #[arg(long)]
        realization: PathBuf,
        /// Evaluate every inequality of the family (the default is all-plus
        /// with one minus on the last edge).
        #[arg(long, alias = "all")]
        all_inequalities: bool,
    },
    /// Top eigenvector of one inequality operator.
    Witness {
        #[arg(long)]
        realization: PathBuf,
        /// Edge signs such as `+++-`.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// The two-edge-glued 5-cycles on two qubits.
    Counterexample,
    /// Noncontextual polytope membership of an empirical model.
    Membership {
        #[arg(long)]
        model: PathBuf,
        /// Write the joint distribution or separating inequality here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether a compatibility graph can host contextual behaviour at all.
    Gate {
        #[arg(long)]
        graph: PathBuf,
    },
}

fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 => Ok(x as u64),
        _ => Err(format!("not a non-negative count: {s}")),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}

/// Accepts a bare realization or a `construct`/`search` report holding one.
fn read_realization(path: &Path) -> Result<Realization> {
    let v = read_json(path)?;
    let inner = match v.pointer("/results/realization") {
        Some(r) => r.clone(),
        None => v,
    };
    Ok(serde_json::from_value(inner)?)
}

#[derive(Serialize)]
struct BoundRow {
    inequality: CycleInequality,
    classical_bound: f64,
    quantum_value: f64,
    witness_state: pauli_cycles::spectral::StateVector,
    verdict: &'static str,
}

fn bound_row(r: &Realization, ineq: CycleInequality) -> Result<BoundRow> {
    let qv = quantum_value(r, &ineq)?;
    let classical_bound = ineq.bound();
    let verdict = if qv.value > classical_bound + VIOLATION_TOL {
        "violated"
    } else {
        "respected"
    };
    // On 4-cycles the witness is additionally checked against the 2√2 eigenspace.
    let witness_state = if ineq.n() == 4 && verdict == "violated" {
        tsirelson_state(r, &ineq)?
    } else {
        qv.witness
    };
    Ok(BoundRow {
        inequality: ineq,
        classical_bound,
        quantum_value: qv.value,
        witness_state,
        verdict,
    })
}

fn cycle_len(r: &Realization) -> Result<usize> {
    if !r.graph().is_labelled_cycle() {
        return Err(Error::InvalidArgument(
            "realization graph is not a labelled cycle".into(),
        ));
    }
    Ok(r.len())
}

fn emit(report: RunReport) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", report.to_json()?) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let started = Instant::now();
    match cli.command {
        Command::Construct { kind, m, out } => {
            let r = match kind {
                Kind::Acc => construct_acc(m)?,
                Kind::C2 => construct_c2(m)?,
                Kind::Big => big_cycle(m)?,
                Kind::PathConcat => big_path(m)?,
            };
            r.require_faithful()?;
            let constraints = if r.graph().is_labelled_cycle() {
                Some(r.check_edge_constraints()?)
            } else {
                None
            };
            if let Some(path) = &out {
                write_json(path, &r)?;
            }
            let results = json!({
                "vertices": r.len(),
                "faithful": true,
                "edge_constraints": constraints,
                "realization": r,
            });
            emit(RunReport::new(
                "construct",
                &json!({"kind": kind, "m": m, "out": out}),
                &results,
                started,
            )?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            m,
            cycle,
            path,
            threads,
            budget,
            no_canonical,
            out,
        } => {
            let target = match (cycle, path) {
                (Some(n), _) => Target::Cycle(n),
                (None, Some(l)) => Target::Path(l),
                (None, None) => unreachable!("clap requires one target"),
            };
            let mut cfg = SearchConfig::new(m, target)
                .with_threads(threads)
                .with_canonicalize(!no_canonical);
            if let Some(b) = budget {
                cfg = cfg.with_budget(b);
            }
            let rep = find_realization(&cfg)?;
            let verdict = rep.verdict();
            if let (Some(path), Some(r)) = (&out, rep.realization()) {
                write_json(path, r)?;
            }
            let results = json!({
                "verdict": verdict,
                "nodes": rep.nodes,
                "by_cycle_bound": rep.by_cycle_bound,
                "realization": rep.realization(),
            });
            emit(RunReport::new(
                "search",
                &json!({"m": m, "cycle": cycle, "path": path, "threads": threads,
                        "budget": budget, "canonicalize": !no_canonical}),
                &results,
                started,
            )?)?;
            Ok(ExitCode::from(match verdict {
                Verdict::Found => 0,
                Verdict::Impossible => 1,
                Verdict::Budget => 2,
            }))
        }
        Command::Table {
            m,
            n_max,
            budget,
            threads,
        } => {
            let n_max = n_max.unwrap_or(3 * m + 1);
            if n_max < 4 {
                return Err(Error::InvalidArgument("--n-max must be at least 4".into()));
            }
            let table = realizability_table(m, 4..=n_max, budget.unwrap_or(u64::MAX), threads)?;
            let results = json!({"max_found": table.max_found(), "table": table});
            emit(RunReport::new(
                "table",
                &json!({"m": m, "n_max": n_max, "budget": budget, "threads": threads}),
                &results,
                started,
            )?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound {
            realization,
            all_inequalities,
        } => {
            let r = read_realization(&realization)?;
            r.require_faithful()?;
            let n = cycle_len(&r)?;
            let inequalities = if all_inequalities {
                enumerate_cycle_inequalities(n)?
            } else {
                let mut gamma = vec![1i8; n];
                gamma[n - 1] = -1;
                vec![CycleInequality::new(gamma)?]
            };
            let rows = inequalities
                .into_iter()
                .map(|ineq| bound_row(&r, ineq))
                .collect::<Result<Vec<_>>>()?;
            emit(RunReport::new(
                "bound",
                &json!({"realization": realization, "all_inequalities": all_inequalities}),
                &json!({"n": n, "rows": rows}),
                started,
            )?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { realization, gamma } => {
            let r = read_realization(&realization)?;
            r.require_faithful()?;
            let n = cycle_len(&r)?;
            let ineq: CycleInequality = gamma.parse()?;
            if ineq.n() != n {
                return Err(Error::InvalidArgument(format!(
                    "gamma has {} signs for a {n}-cycle",
                    ineq.n()
                )));
            }
            let row = bound_row(&r, ineq)?;
            emit(RunReport::new(
                "witness",
                &json!({"realization": realization, "gamma": gamma}),
                &row,
                started,
            )?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Counterexample => {
            let rep = conjoined_counterexample()?;
            emit(RunReport::new("counterexample", &json!({}), &rep, started)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Membership { model, out } => {
            let m: EmpiricalModel = serde_json::from_value(read_json(&model)?)?;
            let verdict = nc_membership(&m)?;
            if let Some(path) = &out {
                match &verdict {
                    Membership::Inside { jpd } => write_json(path, jpd)?,
                    Membership::Outside { certificate } => write_json(path, certificate)?,
                }
            }
            emit(RunReport::new(
                "membership",
                &json!({"model": model, "out": out}),
                &verdict,
                started,
            )?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gate { graph } => {
            let g: Graph = serde_json::from_value(read_json(&graph)?)?;
            let verdict = vorobev_gate(&Scenario::new(g)?);
            emit(RunReport::new(
                "gate",
                &json!({"graph": graph}),
                &verdict,
                started,
            )?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
