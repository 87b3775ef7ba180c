use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use oct_core::bench::{
    emit_tables, fetch_corpus, load_corpus, run_exact_matrix, run_heuristic_matrix, runs_table,
    synthetic_instances, Budget, IlpBackend, Manifest, RunMatrix, SolverKind, TableFormat,
    CORPUS_URL, EXACT_TIMEOUT, HEURISTIC_TIMEOUTS,
};
use oct_core::generators::{
    barabasi_albert, chung_lu, erdos_renyi, lookalike_configs, tunable_oct, GeneratorConfig,
};
use oct_core::heuristics::{ensemble, EnsembleConfig, Heuristic};
use oct_core::ic::{solve_ic, IcConfig};
use oct_core::ilp::{
    format_solution, model_for, solve_binary, solve_enumerated, solve_external, Form, IlpModel,
};
use oct_core::io::{read_graph, write_canonical, InputFormat, LabelMap, LabelOrder};
use oct_core::oracle::{brute_force_oct, brute_force_vc, DEFAULT_CAP};
use oct_core::reductions::{reduce_fixpoint, reduce_fixpoint_with, solve_lifted, ReduceOptions};
use oct_core::vc::{solve_oct_via_vc, solve_vc_exact, to_vc_instance, VcConfig};
use oct_core::{Deadline, OctError, Result, SolverReport};

#[derive(Parser)]
#[command(
    name = "oct",
    version,
    about = "Odd cycle transversal solvers and experiment harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, global = true)]
    timeout: Option<f64>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Table format for bench output on stdout.
    #[arg(long, global = true, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Repeat for more log output.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Args)]
struct Input {
    /// Graph file; `-` reads stdin.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputKind::Auto)]
    input_format: InputKind,
    /// Relabel integer labels numerically instead of as strings.
    #[arg(long)]
    numeric: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputKind {
    Auto,
    Canonical,
    EdgeList,
    Qubo,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Oct,
    Vc,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Oct => Form::Oct,
            FormArg::Vc => Form::Vc,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Oct,
    Vc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Er,
    TunableOct,
    ChungLu,
    Ba,
}

#[derive(Subcommand)]
enum Command {
    /// Download the QUBO corpus.
    Fetch {
        #[arg(long, default_value = "data")]
        dir: PathBuf,
        #[arg(long, default_value = CORPUS_URL)]
        url: String,
    },
    /// Relabel a graph to `0..n` and write it in canonical form.
    Sanitize {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Also write `id label` lines here.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Apply the reduction rules and print the partition as JSON.
    Reduce {
        #[command(flatten)]
        input: Input,
        /// Enable the unconfined-vertex rule in the cover pass.
        #[arg(long)]
        unconfined: bool,
        /// Write the reduced graph here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Heuristic ensemble.
    Heuristic {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        iterations: Option<u64>,
        /// Restrict to these heuristics.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        reduce: bool,
    },
    /// Iterative compression.
    Ic {
        #[command(flatten)]
        input: Input,
        /// Ordering level 0, 1 or 2; by default chosen from the timeout.
        #[arg(long)]
        level: Option<u8>,
        #[arg(long)]
        iterations: Option<u64>,
        #[arg(long)]
        reduce: bool,
    },
    /// Exact solve through vertex cover on the doubled graph.
    VcSolve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Solve vertex cover on the input graph itself.
        #[arg(long)]
        plain: bool,
    },
    /// Write the doubled graph whose minimum cover encodes OCT.
    VcTransform {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write an LP-format integer program.
    IlpExport {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = FormArg::Vc)]
        form: FormArg,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Solve the integer program with an external solver or the built-in
    /// enumerator.
    IlpSolve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = FormArg::Vc)]
        form: FormArg,
        /// Command template with {input}, {output} and {timeout}.
        #[arg(long)]
        cmd: Option<String>,
        #[arg(long)]
        reduce: bool,
    },
    /// Solve an LP file of binaries by enumeration; usable as a command
    /// template target.
    LpEnum {
        lp: PathBuf,
        solution: PathBuf,
        time_limit: Option<f64>,
    },
    /// Sample a synthetic graph.
    Generate {
        #[arg(long, value_enum)]
        family: Option<Family>,
        /// JSON generator configuration instead of flags.
        #[arg(long, conflicts_with = "family")]
        config: Option<String>,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        n_o: usize,
        #[arg(long, default_value_t = 0.5)]
        b: f64,
        #[arg(long, default_value_t = 1)]
        c: usize,
        /// File of expected degrees, whitespace separated.
        #[arg(long)]
        degrees: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Generator configurations that mimic a graph.
    Lookalike {
        #[command(flatten)]
        input: Input,
        /// Also sample each configuration into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Brute-force optimum for small graphs.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Problem::Oct)]
        problem: Problem,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Experiment matrices.
    Bench {
        #[command(subcommand)]
        which: BenchCommand,
    },
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Worst-case ratio to the optimum per dataset, solver and budget.
    Heuristics(BenchArgs),
    /// Exact solves with a deadline.
    Exact(BenchArgs),
}

#[derive(Args)]
struct BenchArgs {
    /// Corpus directory; without it a synthetic dataset is used.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Keep only instances whose name is listed.
    #[arg(long, value_delimiter = ',')]
    instances: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    solvers: Vec<String>,
    /// Timeouts in seconds; the global timeout is used for exact runs.
    #[arg(long, value_delimiter = ',', conflicts_with = "iterations")]
    timeouts: Vec<f64>,
    /// Iteration budgets, for clock-free replay.
    #[arg(long, value_delimiter = ',')]
    iterations: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long)]
    ilp_cmd: Option<String>,
    #[arg(long, value_enum, default_value_t = FormArg::Vc)]
    ilp_form: FormArg,
    /// JSON object of trusted reduced optima by instance name.
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Directory for CSV, markdown and manifest files.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_input(input: &Input) -> Result<(oct_core::Graph, LabelMap)> {
    let bytes = if input.input == Path::new("-") {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)?;
        buf
    } else {
        std::fs::read(&input.input)?
    };
    let format = match input.input_format {
        InputKind::Auto => InputFormat::Auto,
        InputKind::Canonical => InputFormat::Canonical,
        InputKind::EdgeList => InputFormat::EdgeList,
        InputKind::Qubo => InputFormat::Qubo,
    };
    let order = if input.numeric {
        LabelOrder::Numeric
    } else {
        LabelOrder::Lexicographic
    };
    read_graph(&bytes, format, order)
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| OctError::Contract(e.to_string()))?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct Labeled<'a> {
    #[serde(flatten)]
    report: &'a SolverReport,
    labels: Vec<&'a str>,
}

fn print_report(report: &SolverReport, labels: &LabelMap) -> Result<()> {
    let labels = report
        .solution
        .vertices
        .iter()
        .map(|&v| labels.label(v))
        .collect();
    print_json(&Labeled { report, labels })
}

fn maybe_reduced(
    g: &oct_core::Graph,
    reduce: bool,
    solve: impl FnOnce(&oct_core::Graph) -> Result<SolverReport>,
) -> Result<SolverReport> {
    if reduce {
        solve_lifted(g, &reduce_fixpoint(g), solve)
    } else {
        solve(g)
    }
}

fn parse_list<T: std::str::FromStr<Err = OctError>>(items: &[String]) -> Result<Vec<T>> {
    items.iter().map(|s| s.parse()).collect()
}

impl std::str::FromStr for HeuristicName {
    type Err = OctError;
    fn from_str(s: &str) -> Result<Self> {
        Heuristic::ALL
            .into_iter()
            .find(|h| format!("{h:?}").eq_ignore_ascii_case(s))
            .map(HeuristicName)
            .ok_or_else(|| OctError::InvalidArgument(format!("unknown heuristic {s:?}")))
    }
}

struct HeuristicName(Heuristic);

fn bench(cli: &Cli, which: &BenchCommand) -> Result<()> {
    let (args, exact) = match which {
        BenchCommand::Heuristics(a) => (a, false),
        BenchCommand::Exact(a) => (a, true),
    };
    let mut instances = match &args.corpus {
        Some(dir) => load_corpus(dir)?,
        None => synthetic_instances(cli.seed)?,
    };
    if !args.instances.is_empty() {
        instances.retain(|i| args.instances.contains(&i.name));
    }
    let solvers = if args.solvers.is_empty() {
        if exact {
            vec![SolverKind::Ic, SolverKind::Ilp, SolverKind::Vc]
        } else {
            vec![SolverKind::He, SolverKind::Ic, SolverKind::Ilp]
        }
    } else {
        parse_list(&args.solvers)?
    };
    let budgets: Vec<Budget> = if !args.iterations.is_empty() {
        args.iterations
            .iter()
            .map(|&k| Budget::Iterations(k))
            .collect()
    } else if !args.timeouts.is_empty() {
        args.timeouts.iter().map(|&t| Budget::Seconds(t)).collect()
    } else if exact {
        vec![Budget::Seconds(cli.timeout.unwrap_or(EXACT_TIMEOUT))]
    } else {
        HEURISTIC_TIMEOUTS.map(Budget::Seconds).to_vec()
    };
    let mut m = RunMatrix::new(instances, solvers, budgets);
    m.seeds = if args.seeds.is_empty() {
        vec![cli.seed]
    } else {
        args.seeds.clone()
    };
    m.jobs = cli.jobs;
    m.oracle_cap = args.cap;
    m.ilp = IlpBackend {
        command: args.ilp_cmd.clone(),
        form: args.ilp_form.into(),
    };
    if let Some(path) = &args.reference {
        let text = std::fs::read_to_string(path)?;
        m.reference = serde_json::from_str::<BTreeMap<String, usize>>(&text)
            .map_err(|e| OctError::parse(e.line(), e.to_string()))?;
    }
    let timed = m.budgets.iter().any(|b| matches!(b, Budget::Seconds(_)));
    let (stem, main, runs, skipped) = if exact {
        let r = run_exact_matrix(&m)?;
        ("exact", r.table, runs_table(&r.runs, timed), Vec::new())
    } else {
        let r = run_heuristic_matrix(&m)?;
        ("heuristics", r.table, runs_table(&r.runs, timed), r.skipped)
    };
    print!("{}", main.render(cli.format));
    if let Some(dir) = &args.out {
        let manifest = Manifest::new(&m, skipped);
        for path in emit_tables(dir, stem, &[("", &main), ("runs", &runs)], &manifest)? {
            log::info!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn generate(cli: &Cli, command: &Command) -> Result<()> {
    let Command::Generate {
        family,
        config,
        n,
        p,
        n_o,
        b,
        c,
        degrees,
        output,
    } = command
    else {
        unreachable!()
    };
    let seed = cli.seed;
    let g = match (config, family) {
        (Some(json), _) => serde_json::from_str::<GeneratorConfig>(json)
            .map_err(|e| OctError::InvalidArgument(format!("generator config: {e}")))?
            .generate()?,
        (None, Some(Family::Er)) => erdos_renyi(*n, *p, seed)?,
        (None, Some(Family::TunableOct)) => tunable_oct(*n, *p, *n_o, *b, seed)?,
        (None, Some(Family::Ba)) => barabasi_albert(*n, *c, seed)?,
        (None, Some(Family::ChungLu)) => {
            let path = degrees
                .as_ref()
                .ok_or_else(|| OctError::InvalidArgument("chung-lu needs --degrees".into()))?;
            let text = std::fs::read_to_string(path)?;
            let ds = text
                .split_whitespace()
                .enumerate()
                .map(|(i, t)| {
                    t.parse::<f64>()
                        .map_err(|_| OctError::parse(i + 1, format!("bad degree {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let (g, clamped) = chung_lu(&ds, seed)?;
            if clamped > 0 {
                log::warn!("{clamped} pair probabilities clamped to 1");
            }
            g
        }
        (None, None) => {
            return Err(OctError::InvalidArgument(
                "need --family or --config".into(),
            ))
        }
    };
    write_out(output.as_deref(), &write_canonical(&g))
}

fn run(cli: &Cli) -> Result<()> {
    let timeout = cli.timeout;
    match &cli.command {
        Command::Fetch { dir, url } => {
            for path in fetch_corpus(dir, url, timeout)? {
                println!("{}", path.display());
            }
        }
        Command::Sanitize {
            input,
            output,
            labels,
        } => {
            let (g, map) = read_input(input)?;
            write_out(output.as_deref(), &write_canonical(&g))?;
            if let Some(path) = labels {
                let text: String = map
                    .labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| format!("{i} {l}\n"))
                    .collect();
                std::fs::write(path, text)?;
            }
        }
        Command::Reduce {
            input,
            unconfined,
            output,
        } => {
            let (g, _) = read_input(input)?;
            let p = reduce_fixpoint_with(
                &g,
                ReduceOptions {
                    unconfined: *unconfined,
                },
            );
            if let Some(path) = output {
                std::fs::write(path, write_canonical(&p.reduced))?;
            }
            println!("{}", p.to_json());
        }
        Command::Heuristic {
            input,
            iterations,
            only,
            reduce,
        } => {
            let (g, labels) = read_input(input)?;
            let mut cfg = EnsembleConfig::new(timeout, cli.seed);
            cfg.iteration_limit = *iterations;
            if !only.is_empty() {
                cfg.enabled = parse_list::<HeuristicName>(only)?
                    .into_iter()
                    .map(|h| h.0)
                    .collect();
            }
            let r = maybe_reduced(&g, *reduce, |h| Ok(ensemble(h, &cfg)))?;
            print_report(&r, &labels)?;
        }
        Command::Ic {
            input,
            level,
            iterations,
            reduce,
        } => {
            let (g, labels) = read_input(input)?;
            let level = level.unwrap_or_else(|| IcConfig::level_for_timeout(timeout));
            let cfg = IcConfig {
                iteration_limit: *iterations,
                ..IcConfig::new(level, timeout, cli.seed)
            };
            let r = maybe_reduced(&g, *reduce, |h| solve_ic(h, &cfg))?;
            print_report(&r, &labels)?;
        }
        Command::VcSolve {
            input,
            node_limit,
            plain,
        } => {
            let (g, labels) = read_input(input)?;
            let cfg = VcConfig {
                timeout,
                node_limit: *node_limit,
                initial: None,
            };
            if *plain {
                let r = solve_vc_exact(&g, &cfg)?;
                print_json(&r)?;
            } else {
                print_report(&solve_oct_via_vc(&g, &cfg, cli.seed)?, &labels)?;
            }
        }
        Command::VcTransform { input, output } => {
            let (g, _) = read_input(input)?;
            write_out(
                output.as_deref(),
                &write_canonical(&to_vc_instance(&g).graph),
            )?;
        }
        Command::IlpExport {
            input,
            form,
            output,
        } => {
            let (g, _) = read_input(input)?;
            write_out(
                output.as_deref(),
                model_for(&g, (*form).into()).to_lp().as_bytes(),
            )?;
        }
        Command::IlpSolve {
            input,
            form,
            cmd,
            reduce,
        } => {
            let (g, labels) = read_input(input)?;
            let form = (*form).into();
            let r = maybe_reduced(&g, *reduce, |h| match cmd {
                Some(cmd) => solve_external(h, form, cmd, timeout),
                None => solve_enumerated(h, form, &Deadline::from_secs(timeout), None),
            })?;
            print_report(&r, &labels)?;
        }
        Command::LpEnum {
            lp,
            solution,
            time_limit,
        } => {
            let model = IlpModel::parse_lp(&std::fs::read_to_string(lp)?)?;
            let sol = solve_binary(&model, &Deadline::from_secs(time_limit.or(timeout)), None);
            std::fs::write(solution, format_solution(&model, sol.as_ref()))?;
        }
        Command::Generate { .. } => generate(cli, &cli.command)?,
        Command::Lookalike { input, out_dir } => {
            let (g, _) = read_input(input)?;
            let upper = ensemble(&g, &EnsembleConfig::with_iterations(cli.seed, 16)).upper;
            let configs = lookalike_configs(&g, upper, cli.seed)?;
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                for c in &configs {
                    std::fs::write(
                        dir.join(format!("{}.txt", c.family())),
                        write_canonical(&c.generate()?),
                    )?;
                }
            }
            print_json(&configs)?;
        }
        Command::Oracle {
            input,
            problem,
            cap,
        } => {
            let (g, labels) = read_input(input)?;
            let (opt, witness) = match problem {
                Problem::Oct => brute_force_oct(&g, *cap)?,
                Problem::Vc => brute_force_vc(&g, *cap)?,
            };
            let names: Vec<&str> = witness.iter().map(|&v| labels.label(v)).collect();
            print_json(&serde_json::json!({ "opt": opt, "witness": witness, "labels": names }))?;
        }
        Command::Bench { which } => bench(cli, which)?,
    }
    Ok(())
}

fn exit_code(e: &OctError) -> u8 {
    match e {
        OctError::Parse { .. } => 2,
        OctError::Refused { .. } => 3,
        OctError::Integration { .. } => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let OctError::Integration { raw, .. } = &e {
                if !raw.is_empty() {
                    eprintln!("--- solver output ---\n{raw}");
                }
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
