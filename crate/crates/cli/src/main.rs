use std::collections::{HashMap, VecDeque};
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use persiansort::{
    counting_comparator, verify_stable_sort, Algorithm, AlgorithmKind, Dataset, Direction, Family, Format,
    GeneratorSpec, KeyDomain, PersiansortParams, Record, SortStats, DEFAULT_WP,
};
use psrt_cli::{emit_report, run_experiment, Experiment, ExperimentConfig, Metric, ReportFormat, Scale, WpPolicy};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_FLAGGED: u8 = 3;

#[derive(Parser)]
#[command(name = "psrt", version, about = "Persiansort, reference sorts and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated dataset.
    Generate(GenerateArgs),
    /// Sort a dataset file.
    Sort(SortArgs),
    /// Run a benchmark sweep and print a report.
    Bench(BenchArgs),
    /// Check that an output file is a sorted permutation of an input file.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Random,
    Runs,
    KNearly,
    PrefixSorted,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Binary,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Binary => Format::Binary,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run length R (runs).
    #[arg(long = "run-len", short = 'R')]
    run_len: Option<usize>,
    /// Percent of the data covered by runs (runs).
    #[arg(long, default_value_t = 60)]
    run_percent: u32,
    #[arg(long, default_value = "ascending")]
    direction: Direction,
    /// Maximum displacement (k_nearly).
    #[arg(short, long)]
    k: Option<usize>,
    /// Percent of the data that is a sorted prefix (prefix_sorted).
    #[arg(long)]
    pp: Option<u32>,
    /// Draw integer keys from 0..M instead of uniform doubles.
    #[arg(long, value_name = "M")]
    int_keys: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SortArgs {
    #[arg(long, default_value = "persiansort")]
    algo: AlgorithmKind,
    #[arg(long, default_value_t = DEFAULT_WP)]
    wp: usize,
    /// Sort persiansort segments shorter than this by binary insertion.
    #[arg(long)]
    hybrid_threshold: Option<usize>,
    #[arg(short, long)]
    input: PathBuf,
    /// Output path; nothing is written when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Output format; defaults to the input's.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Check the result with the stable-sort verifier.
    #[arg(long)]
    verify: bool,
    /// Print operation counts.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    experiment: Experiment,
    /// Size presets: desk caps n at 10^5, full goes to 10^6.
    #[arg(long, default_value = "desk")]
    scale: Scale,
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// R, k or pp values.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    algos: Option<Vec<AlgorithmKind>>,
    #[arg(long, default_value = "comparisons")]
    metric: Metric,
    /// Warp factor, or `k` for the k-nearly formula.
    #[arg(long)]
    wp: Option<WpPolicy>,
    #[arg(long, default_value_t = 0.001)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1000)]
    max_trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run direction for runs_sweep; both when omitted.
    #[arg(long)]
    direction: Option<Direction>,
    #[arg(long, default_value_t = 60)]
    run_percent: u32,
    /// Allow insertion sort outside k_nearly_sweep.
    #[arg(long)]
    force_insertion: bool,
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
    /// Report path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Exit with status 3 if any row hit the trial cap.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// The unsorted dataset.
    input: PathBuf,
    /// The claimed sorted dataset.
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Generate(args) => generate(args),
        Command::Sort(args) => sort(args),
        Command::Bench(args) => bench(args),
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("psrt: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn write_to(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(bytes),
        None => io::stdout().lock().write_all(bytes),
    }
}

fn generate(args: GenerateArgs) -> CmdResult {
    let family = match args.family {
        FamilyArg::Random => Family::Random,
        FamilyArg::Runs => Family::Runs {
            run_len: args.run_len.ok_or("runs needs --run-len")?,
            run_percent: args.run_percent,
            direction: args.direction,
        },
        FamilyArg::KNearly => Family::KNearly { k: args.k.ok_or("k_nearly needs -k")? },
        FamilyArg::PrefixSorted => Family::PrefixSorted { percent: args.pp.ok_or("prefix_sorted needs --pp")? },
    };
    let mut spec = GeneratorSpec::new(family, args.n, args.seed);
    if let Some(m) = args.int_keys {
        spec = spec.with_keys(KeyDomain::SmallInts(m));
    }
    let dataset = Dataset::generate(&spec)?;
    let mut bytes = Vec::new();
    dataset.write(&mut bytes, args.format.into())?;
    write_to(args.output.as_deref(), &bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn is_binary(path: &Path) -> io::Result<bool> {
    let mut magic = [0u8; 5];
    let mut f = File::open(path)?;
    let read = io::Read::read(&mut f, &mut magic)?;
    Ok(read == 5 && &magic == persiansort::dataset::BINARY_MAGIC)
}

fn sort(args: SortArgs) -> CmdResult {
    let mut params = PersiansortParams::new(args.wp)?;
    if let Some(t) = args.hybrid_threshold {
        params = params.with_hybrid(t)?;
    }
    let algorithm = Algorithm::from_kind(args.algo, params);
    let dataset = Dataset::load(&args.input)?;
    let input = persiansort::records_from_keys(dataset.keys.iter().copied());

    let stats = SortStats::new();
    let mut output = input.clone();
    algorithm.sort_by(&mut output, counting_comparator(Record::key_less, &stats), &stats);

    if let Some(path) = &args.output {
        let format = match args.format {
            Some(f) => f.into(),
            None if is_binary(&args.input)? => Format::Binary,
            None => Format::Text,
        };
        let sorted = Dataset { header: dataset.header.clone(), keys: output.iter().map(|r| r.key).collect() };
        sorted.save(path, format)?;
    }
    if args.stats {
        eprintln!("algorithm={algorithm}\nn={}\n{}", input.len(), stats.snapshot());
    }
    if args.verify {
        let verdict = verify_stable_sort(&input, &output, |a: &f64, b: &f64| a < b);
        eprintln!("verify: {verdict}");
        if !verdict.is_ok() {
            return Ok(ExitCode::from(EXIT_VERIFY));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: BenchArgs) -> CmdResult {
    let mut config = ExperimentConfig::new(args.experiment, args.scale);
    if let Some(sizes) = args.sizes {
        config.sizes = sizes;
    }
    if let Some(grid) = args.grid {
        config.grid = grid;
    }
    if let Some(algos) = args.algos {
        config.algorithms = algos;
    }
    if let Some(wp) = args.wp {
        config.wp = wp;
    }
    if let Some(d) = args.direction {
        config.directions = vec![d];
    }
    config.metric = args.metric;
    config.rel_tol = args.rel_tol;
    config.max_trials = args.max_trials;
    config.base_seed = args.seed;
    config.run_percent = args.run_percent;
    config.force_insertion = args.force_insertion;

    let rows = match run_experiment(&config) {
        Ok(rows) => rows,
        Err(e @ psrt_cli::HarnessError::Verification { .. }) => {
            eprintln!("psrt: {e}");
            return Ok(ExitCode::from(EXIT_VERIFY));
        }
        Err(e) => return Err(e.into()),
    };
    write_to(args.output.as_deref(), emit_report(&rows, args.format).as_bytes())?;
    let flagged = rows.iter().filter(|r| r.flagged).count();
    if flagged > 0 {
        eprintln!("psrt: {flagged} row(s) stopped at --max-trials {} before reaching --rel-tol", config.max_trials);
        if args.strict {
            return Ok(ExitCode::from(EXIT_FLAGGED));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Keys-only files carry no positions, so each output key is matched to the
/// earliest unused input position holding the same bit pattern. Keys absent
/// from the input get positions past the end, which the verifier rejects.
fn verify(args: VerifyArgs) -> CmdResult {
    let input = Dataset::load(&args.input)?.keys;
    let output = Dataset::load(&args.output)?.keys;
    let mut slots: HashMap<u64, VecDeque<usize>> = HashMap::new();
    for (i, k) in input.iter().enumerate() {
        slots.entry(k.to_bits()).or_default().push_back(i);
    }
    let mut foreign = input.len();
    let claimed: Vec<Record<f64>> = output
        .iter()
        .map(|&k| {
            let position = slots.get_mut(&k.to_bits()).and_then(VecDeque::pop_front).unwrap_or_else(|| {
                foreign += 1;
                foreign
            });
            Record::new(k, position)
        })
        .collect();
    let verdict = verify_stable_sort(&persiansort::records_from_keys(input), &claimed, |a: &f64, b: &f64| a < b);
    println!("{verdict}");
    Ok(if verdict.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFY) })
}
