//! Experiment harness: heuristic and exact run matrices on reduced
//! instances, deterministic CSV and markdown tables, and corpus download.

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{OctError, Result};
use crate::generators::{barabasi_albert, chung_lu, erdos_renyi, tunable_oct};
use crate::graph::{verify_oct, Graph};
use crate::heuristics::{ensemble, EnsembleConfig};
use crate::ic::{solve_ic, IcConfig};
use crate::ilp::{solve_enumerated, solve_external, Form};
use crate::io::{parse_edge_list, parse_qubo, sanitize, LabelOrder};
use crate::oracle::{brute_force_oct, DEFAULT_CAP};
use crate::reductions::{lift_solution, reduce_fixpoint, ReductionPartition};
use crate::solution::{mix_seed, Deadline, SolverReport};
use crate::vc::{solve_oct_via_vc, VcConfig};

/// Timeouts of the heuristic matrix, in seconds.
pub const HEURISTIC_TIMEOUTS: [f64; 4] = [0.01, 0.1, 1.0, 10.0];
/// Deadline of the exact matrix, in seconds.
pub const EXACT_TIMEOUT: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SolverKind {
    He,
    Ic,
    Ilp,
    Vc,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] = [
        SolverKind::He,
        SolverKind::Ic,
        SolverKind::Ilp,
        SolverKind::Vc,
    ];
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::He => "HE",
            SolverKind::Ic => "IC",
            SolverKind::Ilp => "ILP",
            SolverKind::Vc => "VC",
        })
    }
}

impl std::str::FromStr for SolverKind {
    type Err = OctError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "he" => Ok(SolverKind::He),
            "ic" => Ok(SolverKind::Ic),
            "ilp" => Ok(SolverKind::Ilp),
            "vc" => Ok(SolverKind::Vc),
            _ => Err(OctError::InvalidArgument(format!("unknown solver {s:?}"))),
        }
    }
}

/// Work allowance for one run. Iteration budgets count heuristic calls,
/// compressions or search nodes, so replays are independent of the clock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Budget {
    Seconds(f64),
    Iterations(u64),
}

impl Budget {
    pub fn label(&self) -> String {
        match self {
            Budget::Seconds(t) => format!("{t}s"),
            Budget::Iterations(k) => format!("{k}it"),
        }
    }

    fn is_timed(&self) -> bool {
        matches!(self, Budget::Seconds(_))
    }
}

#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub dataset: String,
    pub name: String,
    pub graph: Graph,
}

/// External MIP solver used for the ILP column.
#[derive(Debug, Clone, Serialize)]
pub struct IlpBackend {
    /// Command template with `{input}`, `{output}` and `{timeout}`. Without
    /// one, or under an iteration budget, the built-in enumerator runs.
    pub command: Option<String>,
    pub form: Form,
}

impl Default for IlpBackend {
    fn default() -> Self {
        IlpBackend {
            command: None,
            form: Form::Vc,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunMatrix {
    pub instances: Vec<BenchInstance>,
    pub solvers: Vec<SolverKind>,
    pub budgets: Vec<Budget>,
    pub seeds: Vec<u64>,
    pub ilp: IlpBackend,
    /// Worker threads; 1 keeps timings faithful.
    pub jobs: usize,
    pub oracle_cap: usize,
    /// Trusted optimum of the reduced graph by instance name.
    pub reference: BTreeMap<String, usize>,
}

impl RunMatrix {
    pub fn new(
        instances: Vec<BenchInstance>,
        solvers: Vec<SolverKind>,
        budgets: Vec<Budget>,
    ) -> Self {
        RunMatrix {
            instances,
            solvers,
            budgets,
            seeds: vec![0],
            ilp: IlpBackend::default(),
            jobs: 1,
            oracle_cap: DEFAULT_CAP,
            reference: BTreeMap::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.instances.is_empty()
            || self.solvers.is_empty()
            || self.budgets.is_empty()
            || self.seeds.is_empty()
        {
            return Err(OctError::InvalidArgument(
                "run matrix needs instances, solvers, budgets and seeds".into(),
            ));
        }
        let mut names: Vec<&str> = self.instances.iter().map(|i| i.name.as_str()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(OctError::InvalidArgument(format!(
                "duplicate instance name {:?}",
                w[0]
            )));
        }
        Ok(())
    }

    fn timed(&self) -> bool {
        self.budgets.iter().any(Budget::is_timed)
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .map_err(|e| OctError::Config(format!("worker pool: {e}")))
    }
}

/// Runs one solver on `g` within `budget`.
pub fn run_solver(
    kind: SolverKind,
    g: &Graph,
    budget: Budget,
    seed: u64,
    ilp: &IlpBackend,
) -> Result<SolverReport> {
    let (timeout, limit) = match budget {
        Budget::Seconds(t) => (Some(t), None),
        Budget::Iterations(k) => (None, Some(k)),
    };
    match kind {
        SolverKind::He => Ok(ensemble(
            g,
            &EnsembleConfig {
                iteration_limit: limit,
                ..EnsembleConfig::new(timeout, seed)
            },
        )),
        SolverKind::Ic => {
            let level = if limit.is_some() {
                2
            } else {
                IcConfig::level_for_timeout(timeout)
            };
            solve_ic(
                g,
                &IcConfig {
                    iteration_limit: limit,
                    ..IcConfig::new(level, timeout, seed)
                },
            )
        }
        SolverKind::Vc => solve_oct_via_vc(
            g,
            &VcConfig {
                timeout,
                node_limit: limit,
                initial: None,
            },
            seed,
        ),
        SolverKind::Ilp => match (&ilp.command, timeout) {
            (Some(cmd), Some(_)) => solve_external(g, ilp.form, cmd, timeout),
            _ => solve_enumerated(g, ilp.form, &Deadline::from_secs(timeout), limit),
        },
    }
}

/// Instance after preprocessing.
struct Prepared<'a> {
    instance: &'a BenchInstance,
    partition: ReductionPartition,
    /// Trusted optimum of the reduced graph, if any.
    reference: Option<usize>,
}

fn prepare(m: &RunMatrix) -> Vec<Prepared<'_>> {
    m.instances
        .par_iter()
        .map(|instance| {
            let partition = reduce_fixpoint(&instance.graph);
            let reference = match brute_force_oct(&partition.reduced, m.oracle_cap) {
                Ok((opt, _)) => Some(opt),
                Err(_) => m.reference.get(&instance.name).copied(),
            };
            Prepared {
                instance,
                partition,
                reference,
            }
        })
        .collect()
}

/// One solver run on a reduced instance.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub dataset: String,
    pub instance: String,
    pub solver: SolverKind,
    pub budget: String,
    pub seed: u64,
    /// Transversal size on the reduced graph, absent on error.
    pub size: Option<usize>,
    pub lower: Option<usize>,
    pub optimal: bool,
    pub termination: String,
    pub elapsed: Option<f64>,
    pub error: Option<String>,
}

/// `seed` is the matrix seed; the solver sees one mixed with the instance
/// position.
fn record(
    p: &Prepared<'_>,
    index: usize,
    kind: SolverKind,
    budget: Budget,
    seed: u64,
    ilp: &IlpBackend,
) -> Result<RunRecord> {
    let g = &p.partition.reduced;
    let run_seed = mix_seed(&[seed, index as u64]);
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        run_solver(kind, g, budget, run_seed, ilp)
    }))
    .unwrap_or_else(|_| Err(OctError::Contract("solver panicked".into())));
    let mut rec = RunRecord {
        dataset: p.instance.dataset.clone(),
        instance: p.instance.name.clone(),
        solver: kind,
        budget: budget.label(),
        seed,
        size: None,
        lower: None,
        optimal: false,
        termination: "error".into(),
        elapsed: None,
        error: None,
    };
    match outcome {
        Ok(r) => {
            let s = &r.solution.vertices;
            let lifted = lift_solution(&p.partition, s)?;
            if !verify_oct(g, s) || !verify_oct(&p.instance.graph, &lifted) {
                return Err(OctError::Contract(format!(
                    "{kind} returned an infeasible set on {}",
                    p.instance.name
                )));
            }
            rec.size = Some(s.len());
            rec.lower = Some(r.lower);
            rec.optimal = r.optimal;
            rec.termination = r.termination.to_string();
            rec.elapsed = budget.is_timed().then_some(r.elapsed);
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    Ok(rec)
}

fn run_all(
    m: &RunMatrix,
    prepared: &[Prepared<'_>],
    tasks: Vec<(usize, SolverKind, Budget, u64)>,
) -> Result<Vec<RunRecord>> {
    let pool = m.pool()?;
    let mut records = pool.install(|| {
        tasks
            .into_par_iter()
            .map(|(i, kind, budget, seed)| record(&prepared[i], i, kind, budget, seed, &m.ilp))
            .collect::<Result<Vec<_>>>()
    })?;
    let budget_rank = |label: &str| m.budgets.iter().position(|b| b.label() == label);
    records.sort_by(|a, b| {
        (
            &a.dataset,
            &a.instance,
            a.solver,
            budget_rank(&a.budget),
            a.seed,
        )
            .cmp(&(
                &b.dataset,
                &b.instance,
                b.solver,
                budget_rank(&b.budget),
                b.seed,
            ))
    });
    Ok(records)
}

/// Rows and a header, rendered as CSV or markdown.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of UTF-8 fields")
    }

    pub fn to_markdown(&self) -> String {
        let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
        let mut out = line(&self.header);
        out.push_str(&line(&vec!["---".to_string(); self.header.len()]));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Md => self.to_markdown(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum TableFormat {
    #[default]
    Csv,
    Md,
}

/// Result of a heuristic matrix: per-run records, the ratio table and the
/// instances lacking a trusted optimum.
#[derive(Debug, Clone, Serialize)]
pub struct HeuristicResults {
    pub runs: Vec<RunRecord>,
    pub table: Table,
    pub skipped: Vec<String>,
}

/// Worst `size / opt` as a fraction; `opt = 0` with a non-empty set is
/// unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Ratio {
    size: usize,
    opt: usize,
}

impl Ratio {
    fn worse_than(self, other: Ratio) -> bool {
        (self.size as u128) * (other.opt as u128) > (other.size as u128) * (self.opt as u128)
    }

    fn below_one(self) -> bool {
        self.size < self.opt
    }

    fn is_one(self) -> bool {
        self.size == self.opt
    }

    fn render(self) -> String {
        if self.opt == 0 {
            if self.size == 0 {
                "1.00".into()
            } else {
                "inf".into()
            }
        } else {
            format!("{:.2}", self.size as f64 / self.opt as f64)
        }
    }
}

/// Runs every solver at every budget and seed on the reduced instances and
/// tabulates the worst ratio to the reduced optimum per dataset. A cell is
/// `exact` when every run hit the optimum and proved it, `n/a` when no
/// instance of the dataset has a trusted optimum. A ratio below one is an
/// error.
pub fn run_heuristic_matrix(m: &RunMatrix) -> Result<HeuristicResults> {
    m.validate()?;
    let prepared = prepare(m);
    let mut tasks = Vec::new();
    for i in 0..prepared.len() {
        for &kind in &m.solvers {
            for &budget in &m.budgets {
                for &seed in &m.seeds {
                    tasks.push((i, kind, budget, seed));
                }
            }
        }
    }
    let runs = run_all(m, &prepared, tasks)?;

    // proven optima from this matrix back up the oracle
    let mut reference: BTreeMap<&str, usize> = BTreeMap::new();
    for p in &prepared {
        if let Some(opt) = p.reference {
            reference.insert(&p.instance.name, opt);
        }
    }
    for r in &runs {
        if let (true, Some(size)) = (r.optimal, r.size) {
            reference.entry(&r.instance).or_insert(size);
        }
    }
    let mut skipped: Vec<String> = prepared
        .iter()
        .filter(|p| !reference.contains_key(p.instance.name.as_str()))
        .map(|p| p.instance.name.clone())
        .collect();
    skipped.sort();
    for s in &skipped {
        log::warn!("no trusted optimum for {s}, left out of the ratio table");
    }

    let mut datasets: Vec<&str> = prepared
        .iter()
        .map(|p| p.instance.dataset.as_str())
        .collect();
    datasets.sort_unstable();
    datasets.dedup();
    let mut header = vec!["dataset".to_string()];
    for b in &m.budgets {
        for s in &m.solvers {
            header.push(format!("{s} {}", b.label()));
        }
    }
    let mut rows = Vec::new();
    for d in datasets {
        let mut row = vec![d.to_string()];
        for b in &m.budgets {
            let label = b.label();
            for &s in &m.solvers {
                let mut worst: Option<Ratio> = None;
                let mut all_proven = true;
                let mut failed = false;
                for r in runs
                    .iter()
                    .filter(|r| r.dataset == d && r.solver == s && r.budget == label)
                {
                    let Some(&opt) = reference.get(r.instance.as_str()) else {
                        continue;
                    };
                    let Some(size) = r.size else {
                        failed = true;
                        continue;
                    };
                    let ratio = Ratio { size, opt };
                    if ratio.below_one() {
                        return Err(OctError::Contract(format!(
                            "{s} found {size} below the reference optimum {opt} on {}",
                            r.instance
                        )));
                    }
                    all_proven &= r.optimal && ratio.is_one();
                    if worst.is_none_or(|w| ratio.worse_than(w)) {
                        worst = Some(ratio);
                    }
                }
                row.push(match (failed, worst) {
                    (true, _) => "error".into(),
                    (false, None) => "n/a".into(),
                    (false, Some(_)) if all_proven => "exact".into(),
                    (false, Some(w)) => w.render(),
                });
            }
        }
        rows.push(row);
    }
    Ok(HeuristicResults {
        runs,
        table: Table { header, rows },
        skipped,
    })
}

/// Per-run table of a matrix; elapsed times appear only for timed budgets.
pub fn runs_table(runs: &[RunRecord], timed: bool) -> Table {
    let mut header: Vec<String> = [
        "dataset",
        "instance",
        "solver",
        "budget",
        "seed",
        "size",
        "lower",
        "optimal",
        "termination",
    ]
    .map(String::from)
    .to_vec();
    if timed {
        header.push("elapsed".into());
    }
    let opt = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    let rows = runs
        .iter()
        .map(|r| {
            let mut row = vec![
                r.dataset.clone(),
                r.instance.clone(),
                r.solver.to_string(),
                r.budget.clone(),
                r.seed.to_string(),
                opt(r.size),
                opt(r.lower),
                r.optimal.to_string(),
                r.termination.clone(),
            ];
            if timed {
                row.push(r.elapsed.map_or_else(|| "-".into(), |e| format!("{e:.3}")));
            }
            row
        })
        .collect();
    Table { header, rows }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactResults {
    pub runs: Vec<RunRecord>,
    pub table: Table,
}

/// Exact runs on reduced instances under the first budget. `HE` is not an
/// exact method and is left out. Rows list the reduced size, `|Vo|`, the
/// reduced optimum and the full optimum, or a dash when the solver did not
/// prove optimality in time.
pub fn run_exact_matrix(m: &RunMatrix) -> Result<ExactResults> {
    m.validate()?;
    let solvers: Vec<SolverKind> = m
        .solvers
        .iter()
        .copied()
        .filter(|&s| s != SolverKind::He)
        .collect();
    if solvers.is_empty() {
        return Err(OctError::InvalidArgument(
            "exact matrix needs IC, ILP or VC".into(),
        ));
    }
    let budget = m.budgets[0];
    let seed = m.seeds[0];
    let prepared = prepare(m);
    let tasks = (0..prepared.len())
        .flat_map(|i| solvers.iter().map(move |&s| (i, s, budget, seed)))
        .collect();
    let runs = run_all(m, &prepared, tasks)?;
    let by_name: BTreeMap<&str, &Prepared<'_>> = prepared
        .iter()
        .map(|p| (p.instance.name.as_str(), p))
        .collect();
    let mut header: Vec<String> = [
        "dataset",
        "instance",
        "solver",
        "n",
        "m",
        "n_reduced",
        "m_reduced",
        "forced",
        "opt_reduced",
        "opt",
        "status",
    ]
    .map(String::from)
    .to_vec();
    let timed = m.timed();
    if timed {
        header.push("elapsed".into());
    }
    let mut rows = Vec::new();
    for r in &runs {
        let p = by_name[r.instance.as_str()];
        let (g, red) = (&p.instance.graph, &p.partition.reduced);
        let proven = r.optimal.then_some(r.size).flatten();
        if let (Some(a), Some(b)) = (proven, p.reference) {
            if a != b {
                return Err(OctError::Contract(format!(
                    "{} proved {a} on {} but the oracle gives {b}",
                    r.solver, r.instance
                )));
            }
        }
        let status = match (&r.error, proven) {
            (Some(e), _) => format!("error: {e}"),
            (None, Some(_)) => "optimal".into(),
            (None, None) => r.termination.clone(),
        };
        let dash = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        let mut row = vec![
            r.dataset.clone(),
            r.instance.clone(),
            r.solver.to_string(),
            g.n().to_string(),
            g.m().to_string(),
            red.n().to_string(),
            red.m().to_string(),
            p.partition.v_oct.len().to_string(),
            dash(proven),
            dash(proven.map(|o| o + p.partition.v_oct.len())),
            status,
        ];
        if timed {
            row.push(r.elapsed.map_or_else(|| "-".into(), |e| format!("{e:.3}")));
        }
        rows.push(row);
    }
    Ok(ExactResults {
        runs,
        table: Table { header, rows },
    })
}

/// Run configuration recorded next to emitted tables.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub revision: String,
    pub solvers: Vec<SolverKind>,
    pub budgets: Vec<Budget>,
    pub seeds: Vec<u64>,
    pub ilp: IlpBackend,
    pub oracle_cap: usize,
    pub instances: Vec<ManifestInstance>,
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestInstance {
    pub dataset: String,
    pub name: String,
    pub n: usize,
    pub m: usize,
}

impl Manifest {
    pub fn new(m: &RunMatrix, skipped: Vec<String>) -> Self {
        let revision = std::process::Command::new("git")
            .args(["rev-parse", "HEAD"])
            .output()
            .ok()
            .filter(|o| o.status.success())
            .map(|o| String::from_utf8_lossy(&o.stdout).trim().to_string())
            .unwrap_or_else(|| "unknown".into());
        Manifest {
            revision,
            solvers: m.solvers.clone(),
            budgets: m.budgets.clone(),
            seeds: m.seeds.clone(),
            ilp: m.ilp.clone(),
            oracle_cap: m.oracle_cap,
            instances: m
                .instances
                .iter()
                .map(|i| ManifestInstance {
                    dataset: i.dataset.clone(),
                    name: i.name.clone(),
                    n: i.graph.n(),
                    m: i.graph.m(),
                })
                .collect(),
            skipped,
        }
    }
}

/// Writes `<stem>.csv`, `<stem>.md` and `<stem>.manifest.json` into `dir`.
pub fn emit_tables(
    dir: &Path,
    stem: &str,
    tables: &[(&str, &Table)],
    manifest: &Manifest,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (suffix, table) in tables {
        let base = if suffix.is_empty() {
            stem.to_string()
        } else {
            format!("{stem}-{suffix}")
        };
        for (ext, text) in [("csv", table.to_csv()), ("md", table.to_markdown())] {
            let path = dir.join(format!("{base}.{ext}"));
            std::fs::write(&path, text)?;
            written.push(path);
        }
    }
    let path = dir.join(format!("{stem}.manifest.json"));
    let json =
        serde_json::to_string_pretty(manifest).map_err(|e| OctError::Contract(e.to_string()))?;
    std::fs::write(&path, json + "\n")?;
    written.push(path);
    Ok(written)
}

/// Location of the QUBO corpus files.
pub const CORPUS_URL: &str = "http://people.brunel.ac.uk/~mastjjb/jeb/orlib/files";
pub const CORPUS_FILES: [&str; 3] = ["bqpgka.txt", "bqp50.txt", "bqp100.txt"];

/// Downloads the corpus files into `dir`, skipping files already present.
pub fn fetch_corpus(dir: &Path, base_url: &str, timeout: Option<f64>) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs_f64(timeout.unwrap_or(60.0))))
        .build()
        .into();
    let mut out = Vec::new();
    for file in CORPUS_FILES {
        let path = dir.join(file);
        if !path.exists() {
            let url = format!("{}/{file}", base_url.trim_end_matches('/'));
            log::info!("fetching {url}");
            let body = agent
                .get(&url)
                .call()
                .and_then(|mut r| r.body_mut().with_config().limit(64 << 20).read_to_string())
                .map_err(|e| OctError::Io(std::io::Error::other(format!("{url}: {e}"))))?;
            let tmp = dir.join(format!("{file}.part"));
            std::fs::write(&tmp, body)?;
            std::fs::rename(&tmp, &path)?;
        }
        out.push(path);
    }
    Ok(out)
}

/// Instance name prefix for a corpus file.
fn corpus_prefix(file: &str) -> Option<&'static str> {
    match file {
        "bqpgka.txt" => Some("gka"),
        "bqp50.txt" => Some("b-50"),
        "bqp100.txt" => Some("b-100"),
        "bqp250.txt" => Some("b-250"),
        "bqp500.txt" => Some("b-500"),
        _ => None,
    }
}

/// Loads every instance under `dir`: QUBO files become `<prefix>-<i>`
/// (1-based), other `*.graph` files are named edge lists named by stem.
pub fn load_corpus(dir: &Path) -> Result<Vec<BenchInstance>> {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    entries.sort();
    let mut out = Vec::new();
    for path in entries {
        let file = path
            .file_name()
            .and_then(|f| f.to_str())
            .unwrap_or_default();
        let bytes = || std::fs::read(&path);
        if let Some(prefix) = corpus_prefix(file) {
            for (i, raw) in parse_qubo(&bytes()?)?.iter().enumerate() {
                out.push(BenchInstance {
                    dataset: prefix.split('-').next().unwrap_or(prefix).to_string(),
                    name: format!("{prefix}-{}", i + 1),
                    graph: sanitize(raw, LabelOrder::Numeric).0,
                });
            }
        } else if path.extension().is_some_and(|e| e == "graph") {
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            let dataset = stem.split('-').next().unwrap_or(&stem).to_string();
            out.push(BenchInstance {
                dataset,
                name: stem,
                graph: sanitize(&parse_edge_list(&bytes()?)?, LabelOrder::Lexicographic).0,
            });
        }
    }
    Ok(out)
}

/// Fetch-free instances: four families at desk scale, two graphs each,
/// every one derived from `seed`.
pub fn synthetic_instances(seed: u64) -> Result<Vec<BenchInstance>> {
    let mut out = Vec::new();
    for i in 0..2u64 {
        let s = mix_seed(&[seed, i]);
        let degrees: Vec<f64> = (0..30).map(|v| 1.0 + (v % 7) as f64).collect();
        for (dataset, graph) in [
            ("ba", barabasi_albert(30, 2, s)?),
            ("cl", chung_lu(&degrees, s)?.0),
            ("er", erdos_renyi(24, 0.15, s)?),
            ("toct", tunable_oct(30, 0.2, 4, 0.5, s)?),
        ] {
            out.push(BenchInstance {
                dataset: dataset.into(),
                name: format!("{dataset}-{}", i + 1),
                graph,
            });
        }
    }
    Ok(out)
}
