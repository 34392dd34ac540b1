//! Benchmark suites, result rows and the weak-connectivity ablation.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::GenerateError;
use crate::format::{read_instance, write_instance};
use crate::generator::{derive_seed, generate, GenConfig};
use crate::puzzle::{Assignment, Puzzle};
use crate::solver::{solve_detailed, Outcome, SolveOptions};
use crate::verify::verify;

/// Island counts and boards of the standard grid, paired by position.
pub const SIZES: [(usize, usize, usize); 4] =
    [(100, 16, 16), (200, 24, 24), (300, 28, 28), (400, 33, 33)];
pub const ALPHAS: [f64; 4] = [0.0, 0.05, 0.10, 0.15];
pub const BETAS: [f64; 3] = [0.25, 0.5, 0.75];
pub const DESK_REPLICATES: usize = 5;
pub const FULL_REPLICATES: usize = 30;
pub const DEFAULT_SUITE_SEED: u64 = 2019;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    pub n: usize,
    pub rows: usize,
    pub cols: usize,
    pub alpha: f64,
    pub beta: f64,
    pub replicates: usize,
    pub base_seed: u64,
}

impl GroupSpec {
    pub fn replicate_seed(&self, rep: usize) -> u64 {
        derive_seed(self.base_seed, rep as u64)
    }

    pub fn instance_id(&self, rep: usize) -> String {
        format!(
            "n{}_a{:02}_b{:03}_r{:02}",
            self.n,
            (self.alpha * 100.0).round() as u32,
            (self.beta * 100.0).round() as u32,
            rep
        )
    }

    pub fn config(&self, rep: usize) -> GenConfig {
        GenConfig::new(
            self.n,
            self.rows,
            self.cols,
            self.alpha,
            self.beta,
            self.replicate_seed(rep),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSpec {
    pub groups: Vec<GroupSpec>,
}

impl SuiteSpec {
    /// The 4 × 4 × 3 grid of sizes, α and β with `replicates` instances per
    /// group. Group seeds derive from `seed` by group position.
    pub fn standard(replicates: usize, seed: u64) -> Self {
        let mut groups = Vec::new();
        for &(n, rows, cols) in &SIZES {
            for &alpha in &ALPHAS {
                for &beta in &BETAS {
                    groups.push(GroupSpec {
                        n,
                        rows,
                        cols,
                        alpha,
                        beta,
                        replicates,
                        base_seed: derive_seed(seed, groups.len() as u64),
                    });
                }
            }
        }
        Self { groups }
    }

    pub fn desk() -> Self {
        Self::standard(DESK_REPLICATES, DEFAULT_SUITE_SEED)
    }

    pub fn full() -> Self {
        Self::standard(FULL_REPLICATES, DEFAULT_SUITE_SEED)
    }

    pub fn instance_count(&self) -> usize {
        self.groups.iter().map(|g| g.replicates).sum()
    }

    /// `(group, replicate)` pairs in suite order.
    pub fn members(&self) -> impl Iterator<Item = (&GroupSpec, usize)> {
        self.groups
            .iter()
            .flat_map(|g| (0..g.replicates).map(move |r| (g, r)))
    }
}

/// One manifest line per generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRow {
    pub id: String,
    pub n: usize,
    pub rows: usize,
    pub cols: usize,
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
    /// Derived seeds tried before `seed` succeeded.
    pub reseeds: u32,
    pub achieved_cycles: Option<usize>,
    /// `ok`, or the generation error.
    pub status: String,
    pub file: String,
}

impl ManifestRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

pub const MANIFEST_NAME: &str = "manifest.csv";

/// Fresh seeds tried after a replicate's own seed fails to generate.
pub const MAX_RESEEDS: u32 = 64;

/// Generates one instance without touching the filesystem. When the
/// replicate's seed runs into a placement dead end, derived seeds are tried
/// in turn; the manifest records the seed that was finally used.
pub fn generate_member(group: &GroupSpec, rep: usize) -> (ManifestRow, Option<Puzzle>) {
    let mut cfg = group.config(rep);
    let id = group.instance_id(rep);
    let first_seed = cfg.seed;
    let mut reseeds = 0;
    let mut result = generate(&cfg);
    while matches!(result, Err(GenerateError::GenerationFailed { .. })) && reseeds < MAX_RESEEDS {
        reseeds += 1;
        cfg.seed = derive_seed(first_seed, reseeds as u64);
        result = generate(&cfg);
    }
    let row = ManifestRow {
        file: format!("{id}.txt"),
        id,
        n: cfg.n,
        rows: cfg.rows,
        cols: cfg.cols,
        alpha: cfg.alpha,
        beta: cfg.beta,
        seed: cfg.seed,
        reseeds,
        achieved_cycles: result.as_ref().ok().map(|o| o.achieved_cycles),
        status: match &result {
            Ok(_) => "ok".to_string(),
            Err(e) => e.to_string(),
        },
    };
    (row, result.ok().map(|o| o.puzzle))
}

/// Writes every instance of `spec` plus `manifest.csv` into `out_dir`.
/// Generation failures are recorded in the manifest.
pub fn generate_suite(spec: &SuiteSpec, out_dir: &Path) -> io::Result<Vec<ManifestRow>> {
    fs::create_dir_all(out_dir)?;
    let members: Vec<_> = spec.members().collect();
    let generated: Vec<_> = members
        .par_iter()
        .map(|&(g, r)| generate_member(g, r))
        .collect();
    let mut rows = Vec::with_capacity(generated.len());
    for (row, puzzle) in generated {
        if let Some(p) = puzzle {
            fs::write(out_dir.join(&row.file), write_instance(&p))?;
        }
        rows.push(row);
    }
    write_csv(&out_dir.join(MANIFEST_NAME), &rows)?;
    Ok(rows)
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()
}

pub fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> io::Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize()
        .map(|row| row.map_err(io::Error::from))
        .collect()
}

/// A puzzle to benchmark, with its generator parameters when known.
#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub id: String,
    pub path: Option<PathBuf>,
    pub puzzle: Puzzle,
    pub meta: Option<ManifestRow>,
}

/// Loads the successfully generated instances listed in a manifest.
pub fn load_manifest(path: &Path) -> Result<Vec<BenchInstance>, String> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let rows: Vec<ManifestRow> = read_csv(path).map_err(|e| format!("{}: {e}", path.display()))?;
    rows.into_iter()
        .filter(ManifestRow::is_ok)
        .map(|row| {
            let file = dir.join(&row.file);
            let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let puzzle = read_instance(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            Ok(BenchInstance {
                id: row.id.clone(),
                path: Some(file),
                puzzle,
                meta: Some(row),
            })
        })
        .collect()
}

/// One solve of one instance; the CSV schema of the harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub rows: usize,
    pub cols: usize,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub seed: Option<u64>,
    pub weak_enabled: bool,
    /// `feasible`, `infeasible` or `limit`.
    pub outcome: String,
    pub time_ms: u64,
    pub nodes: u64,
    pub cuts_added: u64,
}

#[derive(Debug, Clone)]
pub struct RunRecord {
    pub row: BenchRow,
    pub assignment: Option<Assignment>,
    /// False when a feasible answer failed independent verification.
    pub verified: bool,
}

/// Solves `inst` and re-verifies any returned assignment.
pub fn run_instance(inst: &BenchInstance, opts: &SolveOptions) -> RunRecord {
    let sol = solve_detailed(&inst.puzzle, opts);
    let verified = match &sol.outcome {
        Outcome::Feasible(a) => verify(&inst.puzzle, &sol.edges, a).is_empty(),
        _ => true,
    };
    let meta = inst.meta.as_ref();
    RunRecord {
        row: BenchRow {
            instance: inst.id.clone(),
            n: inst.puzzle.len(),
            rows: inst.puzzle.rows(),
            cols: inst.puzzle.cols(),
            alpha: meta.map(|m| m.alpha),
            beta: meta.map(|m| m.beta),
            seed: meta.map(|m| m.seed),
            weak_enabled: opts.use_weak_connectivity,
            outcome: sol.outcome.label().to_string(),
            time_ms: sol.stats.wall_time.as_millis() as u64,
            nodes: sol.stats.nodes_explored,
            cuts_added: sol.stats.cuts_added,
        },
        assignment: sol.outcome.assignment().cloned(),
        verified,
    }
}

/// Solves every instance under each weak-connectivity setting in `arms`,
/// on `jobs` worker threads. Records come back ordered by instance, then arm.
pub fn run_batch(
    instances: &[BenchInstance],
    opts: &SolveOptions,
    arms: &[bool],
    jobs: usize,
) -> Vec<RunRecord> {
    let tasks: Vec<(usize, bool)> = (0..instances.len())
        .flat_map(|i| arms.iter().map(move |&w| (i, w)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        tasks
            .par_iter()
            .map(|&(i, weak)| {
                let opts = SolveOptions {
                    use_weak_connectivity: weak,
                    ..opts.clone()
                };
                run_instance(&instances[i], &opts)
            })
            .collect()
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ArmStats {
    /// Rows included in the means.
    pub solved: usize,
    /// Rows excluded because the solve hit a limit.
    pub limits: usize,
    pub mean_time_ms: f64,
    pub mean_cuts: f64,
}

impl ArmStats {
    fn from_rows<'a>(rows: impl Iterator<Item = &'a BenchRow>) -> Self {
        let mut s = ArmStats::default();
        let (mut time, mut cuts) = (0u64, 0u64);
        for r in rows {
            if r.outcome == "limit" {
                s.limits += 1;
            } else {
                s.solved += 1;
                time += r.time_ms;
                cuts += r.cuts_added;
            }
        }
        if s.solved > 0 {
            s.mean_time_ms = time as f64 / s.solved as f64;
            s.mean_cuts = cuts as f64 / s.solved as f64;
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub n: usize,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub instances: usize,
    pub weak_solved: usize,
    pub weak_limits: usize,
    pub weak_mean_time_ms: f64,
    pub weak_mean_cuts: f64,
    pub plain_solved: usize,
    pub plain_limits: usize,
    pub plain_mean_time_ms: f64,
    pub plain_mean_cuts: f64,
    /// Instances whose two arms disagree on feasibility (limits excluded).
    pub verdict_mismatches: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AblationSummary {
    pub groups: Vec<GroupSummary>,
    pub weak: ArmStats,
    pub plain: ArmStats,
    pub verdict_mismatches: usize,
}

impl AblationSummary {
    /// Relative rise in mean time when the weak bound is dropped.
    pub fn time_rise(&self) -> f64 {
        self.plain.mean_time_ms / self.weak.mean_time_ms - 1.0
    }

    /// Relative rise in mean cut count when the weak bound is dropped.
    pub fn cuts_rise(&self) -> f64 {
        self.plain.mean_cuts / self.weak.mean_cuts - 1.0
    }
}

type GroupKey = (usize, Option<u64>, Option<u64>);

fn group_key(r: &BenchRow) -> GroupKey {
    // α and β are non-negative, where f64 bit patterns order like the values.
    (r.n, r.alpha.map(f64::to_bits), r.beta.map(f64::to_bits))
}

/// Per-group and overall means of both arms. Limit rows are excluded from
/// the means and counted separately.
pub fn summarize(rows: &[BenchRow]) -> AblationSummary {
    let mut by_group: BTreeMap<GroupKey, Vec<&BenchRow>> = BTreeMap::new();
    for r in rows {
        by_group.entry(group_key(r)).or_default().push(r);
    }
    let mut groups = Vec::new();
    let mut total_mismatch = 0;
    for ((n, _, _), members) in &by_group {
        let weak = ArmStats::from_rows(members.iter().copied().filter(|r| r.weak_enabled));
        let plain = ArmStats::from_rows(members.iter().copied().filter(|r| !r.weak_enabled));
        let mut verdicts: BTreeMap<&str, [Option<&str>; 2]> = BTreeMap::new();
        for r in members {
            verdicts.entry(&r.instance).or_default()[r.weak_enabled as usize] =
                Some(r.outcome.as_str());
        }
        let mismatches = verdicts
            .values()
            .filter(|v| match v {
                [Some(a), Some(b)] => a != b && *a != "limit" && *b != "limit",
                _ => false,
            })
            .count();
        total_mismatch += mismatches;
        groups.push(GroupSummary {
            n: *n,
            alpha: members[0].alpha,
            beta: members[0].beta,
            instances: verdicts.len(),
            weak_solved: weak.solved,
            weak_limits: weak.limits,
            weak_mean_time_ms: weak.mean_time_ms,
            weak_mean_cuts: weak.mean_cuts,
            plain_solved: plain.solved,
            plain_limits: plain.limits,
            plain_mean_time_ms: plain.mean_time_ms,
            plain_mean_cuts: plain.mean_cuts,
            verdict_mismatches: mismatches,
        });
    }
    AblationSummary {
        groups,
        weak: ArmStats::from_rows(rows.iter().filter(|r| r.weak_enabled)),
        plain: ArmStats::from_rows(rows.iter().filter(|r| !r.weak_enabled)),
        verdict_mismatches: total_mismatch,
    }
}
