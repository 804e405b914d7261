use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hierhuff::bench::{self, CsvRow, GridPoint, SweepSpec, SynthParams};
use hierhuff::container::{self, CompressOptions};
use hierhuff::dictionary::{Dictionary, MAX_ENTRIES};
use hierhuff::miner::{self, MiningParams};
use hierhuff::Error;

/// Two-level text compressor: frequent-pattern substitution + Huffman.
#[derive(Debug, Parser)]
#[command(name = "hierhuff", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Mine a pattern dictionary from a training corpus.
    Mine(MineArgs),
    /// Compress a file into a container.
    Compress(CompressArgs),
    /// Restore the original file from a container.
    Decompress(DecompressArgs),
    /// Compare two-level and Huffman-only sizes, or sweep synthetic corpora.
    Bench(BenchArgs),
    /// Generate a synthetic corpus.
    Gen(GenArgs),
    /// Print a container header summary.
    Inspect { input: PathBuf },
}

#[derive(Debug, Args)]
struct MineArgs {
    #[arg(required = true)]
    corpus: Vec<PathBuf>,
    /// Keyword file, one keyword per line.
    #[arg(long)]
    keywords: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    min_len: usize,
    #[arg(long, default_value_t = 10)]
    min_freq: u64,
    #[arg(long, default_value_t = MAX_ENTRIES)]
    max_entries: usize,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct CompressArgs {
    input: PathBuf,
    #[arg(long)]
    dict: Option<PathBuf>,
    /// Store the dictionary inside the container.
    #[arg(long)]
    embed: bool,
    /// Skip pattern substitution (plain Huffman baseline).
    #[arg(long)]
    huffman_only: bool,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct DecompressArgs {
    input: PathBuf,
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Corpus files to measure (needs --dict).
    corpus: Vec<PathBuf>,
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also report cumulative bytes after this many downloads.
    #[arg(long)]
    downloads: Option<u64>,
    /// Sweep mode: synthetic corpus sizes in bytes.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Sweep mode: planted pattern lengths.
    #[arg(long, value_delimiter = ',', default_value = "5")]
    lens: Vec<usize>,
    /// Sweep mode: occurrences per planted pattern.
    #[arg(long, value_delimiter = ',', default_value = "10")]
    freqs: Vec<u64>,
    /// Sweep mode: distinct planted patterns per corpus.
    #[arg(long, default_value_t = 50)]
    patterns: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Keyword file; defaults to a built-in computer-science vocabulary.
    #[arg(long)]
    keywords: Option<PathBuf>,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 1.0)]
    zipf: f64,
    #[arg(short, long)]
    output: PathBuf,
}

enum Failure {
    Usage(String),
    Hh(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Hh(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(..) => 4,
            Failure::Hh(e) => match e {
                Error::DictionaryMismatch { .. } => 3,
                Error::DictionaryUnavailable(_)
                | Error::RejectedKeyword { .. }
                | Error::DegenerateInput => 1,
                Error::Format(_)
                | Error::CorruptStream { .. }
                | Error::UnknownPattern { .. }
                | Error::RankOutOfRange { .. }
                | Error::Truncated { .. }
                | Error::TrailingGarbage
                | Error::Coverage(_) => 2,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Hh(Error::DictionaryUnavailable(d)) => {
                format!("container needs external dictionary {d:016x}; pass --dict")
            }
            Failure::Hh(e) => e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write(path: &Path, data: &[u8]) -> CmdResult {
    fs::write(path, data).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn load_dict(path: &Path) -> Result<Dictionary, Failure> {
    Ok(Dictionary::parse(&read(path)?)?)
}

fn mine(a: MineArgs) -> CmdResult {
    let params = MiningParams::new(a.min_len, a.min_freq, a.max_entries)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let keywords = match &a.keywords {
        Some(p) => miner::parse_keyword_file(&read(p)?),
        None => Vec::new(),
    };
    let mut counts = miner::TokenCounts::new();
    for path in &a.corpus {
        miner::add_counts(&mut counts, &read(path)?);
    }
    let stats = miner::classify(&counts, &params);
    let ranked = miner::select_patterns(&stats, &keywords, &params)?;
    let built = Dictionary::from_ranked(&ranked);
    write(&a.output, &built.dictionary.serialize())?;
    println!("entries {}", built.dictionary.len());
    println!("dropped {}", built.dropped);
    println!("digest {:016x}", built.dictionary.digest());
    Ok(())
}

fn compress(a: CompressArgs) -> CmdResult {
    let text = read(&a.input)?;
    let dict = match &a.dict {
        Some(p) => load_dict(p)?,
        None => Dictionary::empty(),
    };
    let out = container::compress(
        &text,
        &dict,
        CompressOptions {
            embed: a.embed,
            huffman_only: a.huffman_only,
        },
    );
    write(&a.output, &out)?;
    println!("{} -> {} bytes", text.len(), out.len());
    Ok(())
}

fn decompress(a: DecompressArgs) -> CmdResult {
    let data = read(&a.input)?;
    let dict = a.dict.as_deref().map(load_dict).transpose()?;
    let text = container::decompress_with(&data, dict.as_ref())?;
    write(&a.output, &text)
}

fn print_record(name: &str, r: &bench::BenchRecord, downloads: Option<u64>) {
    println!(
        "{name}: input {} hh {} ch {} dict {} perf_hh {:.6} perf_ch {:.6} ratio {:.6} critical_point {}",
        r.input_size,
        r.hh_size,
        r.ch_size,
        r.dict_size,
        r.perf_hh,
        r.perf_ch,
        r.compression_ratio,
        r.critical_point.map_or_else(|| "none".to_string(), |d| d.to_string()),
    );
    if let Some(n) = downloads {
        let (hh, ch) = r.cumulative(n);
        println!("{name}: after {n} downloads hh {hh} ch {ch}");
    }
}

fn bench_cmd(a: BenchArgs) -> CmdResult {
    let rows: Vec<CsvRow> = if !a.sizes.is_empty() {
        if !a.corpus.is_empty() {
            return Err(Failure::Usage("--sizes runs a synthetic sweep; drop the corpus files".into()));
        }
        let mut grid = Vec::new();
        for &input_size in &a.sizes {
            for &pattern_len in &a.lens {
                for &pattern_freq in &a.freqs {
                    grid.push(GridPoint {
                        input_size,
                        pattern_len,
                        pattern_freq,
                    });
                }
            }
        }
        if grid.iter().any(|p| p.pattern_len < 3) {
            return Err(Failure::Usage("pattern lengths must be at least 3".into()));
        }
        let spec = SweepSpec {
            seed: a.seed,
            pattern_count: a.patterns,
            ..Default::default()
        };
        let rows = bench::sweep(&spec, &grid)?;
        for row in &rows {
            let name = format!(
                "size={} len={} freq={}",
                row.record.input_size,
                row.pattern_len.unwrap_or(0),
                row.pattern_freq.unwrap_or(0)
            );
            print_record(&name, &row.record, a.downloads);
        }
        rows
    } else {
        if a.corpus.is_empty() {
            return Err(Failure::Usage("give corpus files with --dict, or --sizes for a sweep".into()));
        }
        let Some(dict_path) = &a.dict else {
            return Err(Failure::Usage("bench on files needs --dict".into()));
        };
        let dict = load_dict(dict_path)?;
        let mut rows = Vec::new();
        for path in &a.corpus {
            let record = bench::measure(&read(path)?, &dict)?;
            print_record(&path.display().to_string(), &record, a.downloads);
            rows.push(CsvRow {
                pattern_len: None,
                pattern_freq: None,
                record,
            });
        }
        rows
    };
    if let Some(csv) = &a.csv {
        let mut buf = Vec::new();
        bench::write_csv(&mut buf, &rows).map_err(|e| Failure::Io(csv.clone(), e))?;
        write(csv, &buf)?;
    }
    Ok(())
}

fn gen(a: GenArgs) -> CmdResult {
    let mut params = SynthParams::cs_default(a.size, a.seed);
    params.zipf_s = a.zipf;
    params.keyword_density = a.density;
    if let Some(p) = &a.keywords {
        params.keywords = miner::parse_keyword_file(&read(p)?);
    }
    let text = bench::gen_synthetic(&params).map_err(|e| Failure::Usage(e.to_string()))?;
    write(&a.output, &text)
}

fn inspect(input: &Path) -> CmdResult {
    let info = container::inspect(&read(input)?)?;
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "version {}", info.version);
    let _ = writeln!(out, "embedded {}", info.embedded());
    let _ = writeln!(out, "huffman_only {}", info.huffman_only());
    let _ = writeln!(out, "digest {:016x}", info.dict_digest);
    let _ = writeln!(out, "dict_bytes {}", info.embedded_dict_len.unwrap_or(0));
    let _ = writeln!(out, "table_bytes {}", info.table_len);
    let _ = writeln!(out, "code_symbols {}", info.code_symbols);
    let _ = writeln!(out, "symbol_count {}", info.symbol_count);
    let _ = writeln!(out, "payload_bytes {}", info.payload_len);
    let _ = writeln!(out, "total_bytes {}", info.total_len);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.cmd {
        Cmd::Mine(a) => mine(a),
        Cmd::Compress(a) => compress(a),
        Cmd::Decompress(a) => decompress(a),
        Cmd::Bench(a) => bench_cmd(a),
        Cmd::Gen(a) => gen(a),
        Cmd::Inspect { input } => inspect(&input),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("hierhuff: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
