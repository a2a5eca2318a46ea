//! Thin command-line front end over the library. Reports print exact
//! rationals alongside decimal companions; decimals never appear alone.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;

use cutstock::corpus::{self, Selection};
use cutstock::exact::{self, Objective, SolveStatus};
use cutstock::format;
use cutstock::generate::{self, GenBoundMode, GenParams};
use cutstock::lprelax::{self, BoundMode};
use cutstock::patmin::{self, PatminStatus, SplitStatus};
use cutstock::patterns::{self, EnumerationMode};
use cutstock::rational::{percent_3dp, RationalText};
use cutstock::{Error, Instance, Solution};

const EXIT_OK: u8 = 0;
const EXIT_INFEASIBLE_OR_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TIME_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "cutstock", version, about = "Exact one-dimensional cutting stock toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Instance file (line-oriented `master`/`order` format).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Time limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Worker threads for solver search (currently the search is
    /// sequential; values above 1 are accepted and ignored).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Emit a single JSON document instead of the human report.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Masters,
    Waste,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    OneSided,
    Equality,
    TwoSided,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternModeArg {
    All,
    Maximal,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenModeArg {
    Equality,
    OneSided,
}

#[derive(Subcommand)]
enum Command {
    /// Solve to proven optimality under a primary objective.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
    },
    /// LP relaxation value, round-up gap, and IRUP/MIRUP verdicts.
    Gap {
        #[command(flatten)]
        common: Common,
        /// Bound mode of the relaxation and integer reference problem.
        #[arg(long, value_enum, default_value = "one-sided")]
        mode: ModeArg,
    },
    /// List feasible (or only maximal) cutting patterns.
    Patterns {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        mode: PatternModeArg,
    },
    /// Minimum number of distinct patterns among waste-optimal solutions.
    Patmin {
        #[command(flatten)]
        common: Common,
        /// Run to completion regardless of --time-limit (proof mode).
        #[arg(long)]
        prove: bool,
    },
    /// Minimum number of patterns an order must appear in.
    Splits {
        #[command(flatten)]
        common: Common,
        /// Order index (0-based, orders sorted by decreasing size).
        #[arg(long)]
        order: usize,
    },
    /// Replay the built-in corpus expectations.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Include long-running entries (uses --time-limit as their budget).
        #[arg(long)]
        all: bool,
    },
    /// Generate a seeded random instance and print it.
    Gen {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        orders: usize,
        #[arg(long, default_value_t = 5000)]
        width: u64,
        /// Smallest size as a fraction of the width, e.g. 0.08.
        #[arg(long, default_value_t = 0.08)]
        size_lo: f64,
        /// Largest size as a fraction of the width, e.g. 0.35.
        #[arg(long, default_value_t = 0.35)]
        size_hi: f64,
        #[arg(long, default_value_t = 10)]
        demand_lo: u64,
        #[arg(long, default_value_t = 60)]
        demand_hi: u64,
        #[arg(long, value_enum, default_value = "equality")]
        mode: GenModeArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Infeasible => EXIT_INFEASIBLE_OR_FAIL,
                Error::Parse { .. }
                | Error::InvalidInstance(_)
                | Error::InvalidGenParams(_)
                | Error::OrderIndexOutOfRange { .. } => EXIT_USAGE,
                _ => EXIT_INFEASIBLE_OR_FAIL,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Solve { common, objective } => {
            let inst = load_instance(&common)?;
            let objective = match objective {
                ObjectiveArg::Masters => Objective::MinMasters,
                ObjectiveArg::Waste => Objective::MinWaste,
            };
            let report = exact::solve_exact(&inst, objective, time_limit(&common))?;
            match &report.status {
                SolveStatus::ProvedOptimal {
                    objective_value,
                    secondary_value,
                    solution,
                } => {
                    if common.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({
                                "objective": objective_name(objective),
                                "status": "proved_optimal",
                                "objective_value": objective_value,
                                "secondary_value": secondary_value,
                                "masters_cap": report.masters_cap,
                                "solution": solution_json(&inst, solution)?,
                            }))
                            .unwrap()
                        );
                    } else {
                        println!("objective: {}", objective_name(objective));
                        println!("status: proved optimal");
                        println!("objective value: {objective_value}");
                        println!("secondary value: {secondary_value}");
                        if let Some(cap) = report.masters_cap {
                            println!("masters cap: {cap}");
                        }
                        print_solution(&inst, solution)?;
                    }
                    Ok(EXIT_OK)
                }
                SolveStatus::Infeasible => {
                    if common.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({
                                "objective": objective_name(objective),
                                "status": "infeasible",
                            }))
                            .unwrap()
                        );
                    } else {
                        println!("status: infeasible");
                    }
                    Ok(EXIT_INFEASIBLE_OR_FAIL)
                }
                SolveStatus::TimeLimit {
                    best_bound,
                    incumbent,
                } => {
                    if common.json {
                        let incumbent_json = match incumbent {
                            Some((v, s)) => {
                                json!({"value": v, "solution": solution_json(&inst, s)?})
                            }
                            None => serde_json::Value::Null,
                        };
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({
                                "objective": objective_name(objective),
                                "status": "time_limit",
                                "best_bound": best_bound,
                                "incumbent": incumbent_json,
                            }))
                            .unwrap()
                        );
                    } else {
                        println!("status: time limit reached without proof");
                        println!("best bound: {best_bound}");
                        match incumbent {
                            Some((v, s)) => {
                                println!("incumbent value: {v}");
                                print_solution(&inst, s)?;
                            }
                            None => println!("incumbent: none"),
                        }
                    }
                    Ok(EXIT_TIME_LIMIT)
                }
            }
        }
        Command::Gap { common, mode } => {
            let inst = load_instance(&common)?;
            let mode = match mode {
                ModeArg::OneSided => BoundMode::OneSided,
                ModeArg::Equality => BoundMode::Equality,
                ModeArg::TwoSided => BoundMode::TwoSided,
            };
            let g = lprelax::gap_report(&inst, mode)?;
            let irup = g.rounded_gap == 0;
            let mirup = g.rounded_gap <= 1;
            let z_lp = RationalText::of(&g.z_lp);
            let gap = RationalText::of(&g.gap);
            if common.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "mode": mode_name(mode),
                        "z_lp": z_lp,
                        "z_star": g.z_star,
                        "gap": gap,
                        "rounded_gap": g.rounded_gap,
                        "irup": irup,
                        "mirup": mirup,
                    }))
                    .unwrap()
                );
            } else {
                println!("mode: {}", mode_name(mode));
                println!("z_LP: {z_lp}");
                println!("z*: {}", g.z_star);
                println!("gap (z* - z_LP): {gap}");
                println!("rounded gap (z* - ceil(z_LP)): {}", g.rounded_gap);
                println!("IRUP (z* = ceil(z_LP)): {irup}");
                println!("MIRUP (z* <= ceil(z_LP) + 1): {mirup}");
            }
            Ok(EXIT_OK)
        }
        Command::Patterns { common, mode } => {
            let inst = load_instance(&common)?;
            let enumeration = match mode {
                PatternModeArg::All => EnumerationMode::all_feasible(),
                PatternModeArg::Maximal => EnumerationMode::maximal_only(),
            };
            let pool = patterns::enumerate_patterns(&inst, enumeration)?;
            if common.json {
                let rows: Vec<serde_json::Value> = pool
                    .iter()
                    .map(|p| json!({"counts": p.counts(), "waste": p.waste()}))
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "mode": match mode { PatternModeArg::All => "all", PatternModeArg::Maximal => "maximal" },
                        "count": pool.len(),
                        "patterns": rows,
                    }))
                    .unwrap()
                );
            } else {
                println!("{} patterns", pool.len());
                for p in &pool {
                    println!("{p}  waste {}", p.waste());
                }
            }
            Ok(EXIT_OK)
        }
        Command::Patmin { common, prove } => {
            let inst = load_instance(&common)?;
            let limit = if prove { None } else { time_limit(&common) };
            let report = patmin::min_patterns(&inst, limit)?;
            match &report.status {
                PatminStatus::ProvedOptimal {
                    min_pattern_count,
                    witness,
                } => {
                    if common.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({
                                "status": "proved_optimal",
                                "optimal_waste": report.optimal_waste,
                                "min_pattern_count": min_pattern_count,
                                "witness": solution_json(&inst, witness)?,
                            }))
                            .unwrap()
                        );
                    } else {
                        println!("optimal waste: {}", report.optimal_waste);
                        println!("minimum distinct patterns: {min_pattern_count}");
                        print_solution(&inst, witness)?;
                    }
                    Ok(EXIT_OK)
                }
                PatminStatus::LowerBoundOnly {
                    proven_lower_bound,
                    best_known,
                } => {
                    if common.json {
                        let best = match best_known {
                            Some((k, s)) => {
                                json!({"pattern_count": k, "witness": solution_json(&inst, s)?})
                            }
                            None => serde_json::Value::Null,
                        };
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({
                                "status": "lower_bound_only",
                                "optimal_waste": report.optimal_waste,
                                "proven_lower_bound": proven_lower_bound,
                                "best_known": best,
                            }))
                            .unwrap()
                        );
                    } else {
                        println!("status: time limit reached without proof");
                        println!("proven lower bound: {proven_lower_bound}");
                        match best_known {
                            Some((k, _)) => println!("best known pattern count: {k}"),
                            None => println!("best known: none"),
                        }
                    }
                    Ok(EXIT_TIME_LIMIT)
                }
            }
        }
        Command::Splits { common, order } => {
            let inst = load_instance(&common)?;
            let report = patmin::min_split_for_order(&inst, order, time_limit(&common))?;
            match &report.status {
                SplitStatus::Proved {
                    min_appearances,
                    witness,
                } => {
                    if common.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({
                                "status": "proved",
                                "order_index": order,
                                "min_appearances": min_appearances,
                                "witness": solution_json(&inst, witness)?,
                            }))
                            .unwrap()
                        );
                    } else {
                        println!("order index: {order} (size {})", inst.orders()[order].size());
                        println!("minimum appearances: {min_appearances}");
                        print_solution(&inst, witness)?;
                    }
                    Ok(EXIT_OK)
                }
                SplitStatus::BestKnown {
                    proven_lower_bound,
                    upper_bound,
                    witness,
                } => {
                    if common.json {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({
                                "status": "best_known",
                                "order_index": order,
                                "proven_lower_bound": proven_lower_bound,
                                "upper_bound": upper_bound,
                                "witness": solution_json(&inst, witness)?,
                            }))
                            .unwrap()
                        );
                    } else {
                        println!("status: time limit reached without proof");
                        println!("appearances in [{proven_lower_bound}, {upper_bound}]");
                    }
                    Ok(EXIT_TIME_LIMIT)
                }
            }
        }
        Command::Verify { common, all } => {
            let selection = if all { Selection::All } else { Selection::Fast };
            let budget = time_limit(&common);
            let report = corpus::verify_corpus(selection, budget);
            if common.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_table());
            }
            if report.all_passed() {
                Ok(EXIT_OK)
            } else if report.rows.iter().any(|r| r.status == corpus::CheckStatus::Fail) {
                Ok(EXIT_INFEASIBLE_OR_FAIL)
            } else {
                Ok(EXIT_TIME_LIMIT)
            }
        }
        Command::Gen {
            common,
            seed,
            orders,
            width,
            size_lo,
            size_hi,
            demand_lo,
            demand_hi,
            mode,
        } => {
            let params = GenParams {
                order_count: orders,
                master_width: width,
                size_lo: f64_fraction(size_lo)?,
                size_hi: f64_fraction(size_hi)?,
                demand_lo,
                demand_hi,
                bound_mode: match mode {
                    GenModeArg::Equality => GenBoundMode::Equality,
                    GenModeArg::OneSided => GenBoundMode::OneSided,
                },
            };
            let inst = generate::generate_instance(&params, seed)?;
            if common.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "seed": seed,
                        "text": format::emit_instance(&inst),
                    }))
                    .unwrap()
                );
            } else {
                print!("{}", format::emit_instance(&inst));
            }
            Ok(EXIT_OK)
        }
    }
}

fn load_instance(common: &Common) -> Result<Instance, Error> {
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| Error::InvalidInstance("--input FILE is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInstance(format!("cannot read {}: {e}", path.display())))?;
    format::parse_instance(&text)
}

fn time_limit(common: &Common) -> Option<Duration> {
    common.time_limit.map(Duration::from_secs_f64)
}

/// Exact fraction of the decimal literal as written (3 decimal places).
fn f64_fraction(x: f64) -> Result<Ratio<u64>, Error> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::InvalidGenParams(
            "size fractions must lie in (0, 1]".into(),
        ));
    }
    let scaled = (x * 1000.0).round() as u64;
    if scaled == 0 {
        return Err(Error::InvalidGenParams("size fraction too small".into()));
    }
    Ok(Ratio::new(scaled, 1000))
}

fn objective_name(o: Objective) -> &'static str {
    match o {
        Objective::MinMasters => "masters",
        Objective::MinWaste => "waste",
    }
}

fn mode_name(m: BoundMode) -> &'static str {
    match m {
        BoundMode::OneSided => "one-sided",
        BoundMode::Equality => "equality",
        BoundMode::TwoSided => "two-sided",
    }
}

fn solution_json(inst: &Instance, solution: &Solution) -> Result<serde_json::Value, Error> {
    let summary = solution.summarize(inst)?;
    let entries: Vec<serde_json::Value> = solution
        .entries()
        .iter()
        .map(|(p, x)| json!({"counts": p.counts(), "waste": p.waste(), "multiplicity": x}))
        .collect();
    Ok(json!({
        "entries": entries,
        "masters": summary.masters,
        "total_waste": summary.total_waste,
        "percent_waste": format!("{}%", percent_3dp(&summary.percent_waste)),
        "produced": summary.produced,
        "split_profile": summary.split_profile,
        "pattern_count": summary.pattern_count,
    }))
}

fn print_solution(inst: &Instance, solution: &Solution) -> Result<(), Error> {
    let summary = solution.summarize(inst)?;
    println!(
        "solution: {} masters, waste {} ({}%), {} distinct patterns",
        summary.masters,
        summary.total_waste,
        percent_3dp(&summary.percent_waste),
        summary.pattern_count
    );
    for (p, x) in solution.entries() {
        println!("  {x} x {p}  waste {}", p.waste());
    }
    Ok(())
}
