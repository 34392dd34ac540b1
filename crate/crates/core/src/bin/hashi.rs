use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hashi::bench::{
    generate_suite, load_manifest, run_batch, summarize, write_csv, BenchInstance, BenchRow,
    SuiteSpec, DEFAULT_SUITE_SEED, DESK_REPLICATES, FULL_REPLICATES,
};
use hashi::oracle::{enumerate_with, DEFAULT_EDGE_LIMIT};
use hashi::solver::Branching;
use hashi::{
    build_edges, generate, read_instance, read_solution, verify, write_instance, write_solution,
    CutEmission, GenConfig, SolveOptions,
};

#[derive(Parser)]
#[command(
    name = "hashi",
    version,
    about = "Hashiwokakero solver, generator and benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one instance, or a benchmark suite with its manifest.
    Generate(GenerateArgs),
    /// Solve instance files or a suite manifest; prints one CSV row per solve.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Verify(VerifyArgs),
    /// Solve a suite with and without the weak connectivity bound.
    Ablate(AblateArgs),
    /// Count every feasible assignment of a small instance.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Desk,
    Full,
}

#[derive(Args)]
struct GenerateArgs {
    /// Island count; selects single-instance mode.
    #[arg(long, requires_all = ["rows", "cols"])]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Share of extra edges attempted after the spanning tree.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Probability of doubling each bridge.
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    #[arg(long, default_value_t = DEFAULT_SUITE_SEED)]
    seed: u64,
    /// Suite to generate when --n is absent.
    #[arg(long, value_enum, default_value_t = Suite::Desk)]
    suite: Suite,
    /// Instances per suite group; defaults to the suite's own count.
    #[arg(long)]
    replicates: Option<usize>,
    /// Instance file (single mode, default stdout) or suite directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CutPolicy {
    All,
    AllButLargest,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchRule {
    Weighted,
    SlackFirst,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long)]
    no_weak_connectivity: bool,
    #[arg(long, value_enum, default_value_t = CutPolicy::All)]
    cut_policy: CutPolicy,
    /// Seconds per solve.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long)]
    node_limit: Option<u64>,
    #[arg(long, value_enum, default_value_t = BranchRule::Weighted)]
    branching: BranchRule,
    #[arg(long)]
    no_probing: bool,
    /// Worker threads; solves stay single-threaded.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl SolverArgs {
    fn options(&self) -> Result<SolveOptions, Failure> {
        if !(self.time_limit > 0.0 && self.time_limit.is_finite()) {
            return Err(Failure::Usage("--time-limit must be positive".into()));
        }
        if self.node_limit == Some(0) {
            return Err(Failure::Usage("--node-limit must be positive".into()));
        }
        Ok(SolveOptions {
            use_weak_connectivity: !self.no_weak_connectivity,
            node_limit: self.node_limit,
            time_limit: Some(Duration::from_secs_f64(self.time_limit)),
            cut_emission: match self.cut_policy {
                CutPolicy::All => CutEmission::AllComponents,
                CutPolicy::AllButLargest => CutEmission::AllButLargest,
            },
            branching: match self.branching {
                BranchRule::Weighted => Branching::ConflictWeighted,
                BranchRule::SlackFirst => Branching::SlackFirst,
            },
            probing: !self.no_probing,
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Instance files.
    files: Vec<PathBuf>,
    /// Suite manifest to solve instead of (or besides) files.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
    /// Directory for solution files of feasible instances.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    solution: PathBuf,
}

#[derive(Args)]
struct AblateArgs {
    /// Suite manifest written by `generate`.
    #[arg(long)]
    manifest: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    /// Directory for rows.csv and summary.csv.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
    edge_limit: usize,
    /// Feasible assignments to print.
    #[arg(long, default_value_t = 1)]
    witnesses: usize,
}

enum Failure {
    Verification,
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Ablate(a) => cmd_ablate(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_generate(a: GenerateArgs) -> Result<(), Failure> {
    let Some(n) = a.n else {
        let out = a
            .out
            .ok_or_else(|| Failure::Usage("suite generation needs --out".into()))?;
        let replicates = a.replicates.unwrap_or(match a.suite {
            Suite::Desk => DESK_REPLICATES,
            Suite::Full => FULL_REPLICATES,
        });
        if replicates == 0 {
            return Err(Failure::Usage("--replicates must be positive".into()));
        }
        let spec = SuiteSpec::standard(replicates, a.seed);
        let rows = generate_suite(&spec, &out)
            .map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
        let failed = rows.iter().filter(|r| !r.is_ok()).count();
        println!(
            "{} instances in {} groups written to {} ({failed} failed)",
            rows.len() - failed,
            spec.groups.len(),
            out.display()
        );
        return Ok(());
    };
    let cfg = GenConfig::new(
        n,
        a.rows.unwrap_or(0),
        a.cols.unwrap_or(0),
        a.alpha,
        a.beta,
        a.seed,
    );
    let outcome = generate(&cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = write_instance(&outcome.puzzle);
    match a.out {
        Some(path) => write_text(&path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_solve(a: SolveArgs) -> Result<(), Failure> {
    let opts = a.solver.options()?;
    if a.files.is_empty() && a.manifest.is_none() {
        return Err(Failure::Usage(
            "no instance files or --manifest given".into(),
        ));
    }
    let mut instances = Vec::new();
    let mut parse_failed = false;
    if let Some(m) = &a.manifest {
        instances.extend(load_manifest(m).map_err(Failure::Usage)?);
    }
    for path in &a.files {
        let parsed = read_text(path).and_then(|t| {
            read_instance(&t).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        });
        match parsed {
            Ok(puzzle) => instances.push(BenchInstance {
                id: path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                path: Some(path.clone()),
                puzzle,
                meta: None,
            }),
            Err(Failure::Usage(msg)) => {
                eprintln!("error: {msg}");
                parse_failed = true;
            }
            Err(Failure::Verification) => unreachable!(),
        }
    }
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    }

    let records = run_batch(
        &instances,
        &opts,
        &[opts.use_weak_connectivity],
        a.solver.jobs,
    );
    let mut csv = csv::Writer::from_writer(io::stdout());
    let mut unverified = false;
    for (inst, rec) in instances.iter().zip(&records) {
        csv.serialize(&rec.row).expect("stdout");
        if !rec.verified {
            eprintln!("{}: returned assignment failed verification", inst.id);
            unverified = true;
        }
        if let (Some(dir), Some(assignment)) = (&a.out, &rec.assignment) {
            let edges = build_edges(&inst.puzzle);
            let text = write_solution(&inst.puzzle, &edges, assignment)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            write_text(&dir.join(format!("{}.sol.txt", inst.id)), &text)?;
        }
    }
    csv.flush().expect("stdout");
    if unverified {
        Err(Failure::Verification)
    } else if parse_failed {
        Err(Failure::Usage("some instances could not be read".into()))
    } else {
        Ok(())
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let puzzle = read_instance(&read_text(&a.instance)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.instance.display())))?;
    let sol = read_solution(&read_text(&a.solution)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.solution.display())))?;
    let (sr, sc) = (sol.puzzle.rows(), sol.puzzle.cols());
    if (sr, sc) != (puzzle.rows(), puzzle.cols()) {
        return Err(Failure::Usage(format!(
            "dimension mismatch: instance is {}x{}, solution is {sr}x{sc}",
            puzzle.rows(),
            puzzle.cols()
        )));
    }
    if sol.puzzle != puzzle {
        return Err(Failure::Usage(
            "the solution's islands differ from the instance's".into(),
        ));
    }
    let edges = build_edges(&puzzle);
    let (assignment, mut violations) = sol.decode(&edges);
    violations.extend(verify(&puzzle, &edges, &assignment));
    let mut out = io::stdout().lock();
    for v in &violations {
        writeln!(out, "{v}").expect("stdout");
    }
    if violations.is_empty() {
        writeln!(out, "ok").expect("stdout");
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_ablate(a: AblateArgs) -> Result<(), Failure> {
    let opts = a.solver.options()?;
    let instances = load_manifest(&a.manifest).map_err(Failure::Usage)?;
    fs::create_dir_all(&a.out).map_err(|e| Failure::Usage(format!("{}: {e}", a.out.display())))?;
    let records = run_batch(&instances, &opts, &[true, false], a.solver.jobs);
    let rows: Vec<BenchRow> = records.iter().map(|r| r.row.clone()).collect();
    let summary = summarize(&rows);
    let io_err = |p: &Path| {
        let p = p.display().to_string();
        move |e: io::Error| Failure::Usage(format!("{p}: {e}"))
    };
    let rows_path = a.out.join("rows.csv");
    write_csv(&rows_path, &rows).map_err(io_err(&rows_path))?;
    let summary_path = a.out.join("summary.csv");
    write_csv(&summary_path, &summary.groups).map_err(io_err(&summary_path))?;

    for r in rows.iter().filter(|r| r.outcome == "limit") {
        eprintln!(
            "{} (weak {}): limit reached, excluded from means",
            r.instance, r.weak_enabled
        );
    }
    println!(
        "with weak bound:    {} solved, mean {:.1} ms, mean {:.2} cuts",
        summary.weak.solved, summary.weak.mean_time_ms, summary.weak.mean_cuts
    );
    println!(
        "without weak bound: {} solved, mean {:.1} ms, mean {:.2} cuts",
        summary.plain.solved, summary.plain.mean_time_ms, summary.plain.mean_cuts
    );
    println!(
        "time rises by {:.0}%, cuts rise by {:.0}%",
        100.0 * summary.time_rise(),
        100.0 * summary.cuts_rise()
    );
    println!("verdict mismatches: {}", summary.verdict_mismatches);
    if records.iter().any(|r| !r.verified) {
        eprintln!("some returned assignments failed verification");
        return Err(Failure::Verification);
    }
    Ok(())
}

fn cmd_oracle(a: OracleArgs) -> Result<(), Failure> {
    let puzzle = read_instance(&read_text(&a.instance)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.instance.display())))?;
    let result = enumerate_with(&puzzle, a.edge_limit, a.witnesses)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    println!("feasible assignments: {}", result.feasible_count);
    let edges = build_edges(&puzzle);
    for w in &result.witnesses {
        let text = write_solution(&puzzle, &edges, w).map_err(|e| Failure::Usage(e.to_string()))?;
        print!("{text}");
    }
    Ok(())
}
