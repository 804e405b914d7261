//! Benchmark harness: two-level vs Huffman-only sizes, the download count
//! at which shipping the dictionary pays off, synthetic corpora, and
//! parameter sweeps written as CSV.
//!
//! All random generation uses `ChaCha8Rng::seed_from_u64(seed)` so corpora
//! are reproducible across platforms.

use std::collections::HashSet;
use std::io::{self, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};

use crate::container::{compress, CompressOptions};
use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::miner::{mine, MiningParams};

/// Computer-science vocabulary (lengths 4..=15) for synthetic corpora.
pub const CS_KEYWORDS: &[&str] = &[
    "algorithm", "function", "variable", "compiler", "pointer", "recursion",
    "complexity", "structure", "iteration", "interface", "inheritance",
    "polymorphism", "abstraction", "encapsulation", "database", "transaction",
    "concurrency", "synchronization", "semaphore", "deadlock", "scheduler",
    "process", "thread", "memory", "allocation", "garbage", "collector",
    "register", "instruction", "pipeline", "processor", "architecture",
    "network", "protocol", "packet", "router", "bandwidth", "latency",
    "throughput", "compression", "encoding", "decoding", "huffman", "entropy",
    "binary", "integer", "floating", "boolean", "string", "array", "vector",
    "matrix", "graph", "vertex", "edges", "adjacency", "traversal", "search",
    "sorting", "quicksort", "mergesort", "heapsort", "hashtable", "bucket",
    "collision", "queue", "stack", "linked", "list", "tree", "node", "leaf",
    "balanced", "rotation", "dynamic", "programming", "greedy", "heuristic",
    "optimization", "parameter", "argument", "return", "exception", "runtime",
    "kernel", "filesystem", "directory", "permission", "virtual", "paging",
    "segment", "cache", "locality", "prefetch", "branch", "predictor",
    "automaton", "grammar", "parser", "lexer", "token", "syntax", "semantic",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRecord {
    pub input_size: u64,
    pub hh_size: u64,
    pub ch_size: u64,
    pub dict_size: u64,
    pub perf_hh: f64,
    pub perf_ch: f64,
    pub compression_ratio: f64,
    pub critical_point: Option<u64>,
}

impl BenchRecord {
    pub fn from_sizes(input_size: u64, hh_size: u64, ch_size: u64, dict_size: u64) -> Result<Self> {
        if input_size == 0 {
            return Err(Error::DegenerateInput);
        }
        Ok(BenchRecord {
            input_size,
            hh_size,
            ch_size,
            dict_size,
            perf_hh: hh_size as f64 / input_size as f64,
            perf_ch: ch_size as f64 / input_size as f64,
            compression_ratio: hh_size as f64 / ch_size as f64,
            critical_point: critical_point(dict_size, hh_size, ch_size),
        })
    }

    /// Total bytes sent for `downloads` transfers: (two-level, huffman-only).
    /// The dictionary is sent once.
    pub fn cumulative(&self, downloads: u64) -> (u64, u64) {
        (
            downloads * self.hh_size + self.dict_size,
            downloads * self.ch_size,
        )
    }
}

/// Compresses `text` both ways (dictionary not embedded) and compares.
pub fn measure(text: &[u8], dict: &Dictionary) -> Result<BenchRecord> {
    if text.is_empty() {
        return Err(Error::DegenerateInput);
    }
    let hh = compress(text, dict, CompressOptions::default());
    let ch = compress(
        text,
        dict,
        CompressOptions {
            embed: false,
            huffman_only: true,
        },
    );
    BenchRecord::from_sizes(
        text.len() as u64,
        hh.len() as u64,
        ch.len() as u64,
        dict.serialize().len() as u64,
    )
}

/// Smallest download count `D >= 1` with `D*hh + dict < D*ch`.
pub fn critical_point(dict_size: u64, hh_size: u64, ch_size: u64) -> Option<u64> {
    if ch_size <= hh_size {
        return None;
    }
    Some(dict_size / (ch_size - hh_size) + 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    pub size: usize,
    pub seed: u64,
    pub keywords: Vec<Vec<u8>>,
    pub zipf_s: f64,
    pub keyword_density: f64,
}

impl SynthParams {
    /// 100 CS keywords, Zipf exponent 1, 30% keyword tokens.
    pub fn cs_default(size: usize, seed: u64) -> Self {
        SynthParams {
            size,
            seed,
            keywords: CS_KEYWORDS.iter().map(|k| k.as_bytes().to_vec()).collect(),
            zipf_s: 1.0,
            keyword_density: 0.3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.keyword_density) {
            return Err(Error::format("keyword density must lie in [0, 1]"));
        }
        if !(self.zipf_s > 0.0) {
            return Err(Error::format("zipf exponent must be positive"));
        }
        Ok(())
    }
}

fn filler_token(rng: &mut ChaCha8Rng, out: &mut Vec<u8>) {
    let len = rng.random_range(2..=8);
    out.clear();
    out.extend((0..len).map(|_| rng.random_range(b'a'..=b'z')));
}

/// Space-separated tokens: with probability `keyword_density` a keyword
/// picked by Zipf rank, otherwise a random lowercase word of 2-8 letters.
/// Stops before the first token that would overflow `size`.
pub fn gen_synthetic(params: &SynthParams) -> Result<Vec<u8>> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let zipf = if params.keywords.is_empty() {
        None
    } else {
        Some(
            Zipf::new(params.keywords.len() as f64, params.zipf_s)
                .map_err(|e| Error::format(format!("zipf: {e}")))?,
        )
    };
    let mut out = Vec::with_capacity(params.size);
    let mut filler = Vec::with_capacity(8);
    loop {
        let tok: &[u8] = match &zipf {
            Some(z) if rng.random::<f64>() < params.keyword_density => {
                let rank = z.sample(&mut rng) as usize;
                &params.keywords[rank.clamp(1, params.keywords.len()) - 1]
            }
            _ => {
                filler_token(&mut rng, &mut filler);
                &filler
            }
        };
        let sep = usize::from(!out.is_empty());
        if out.len() + sep + tok.len() > params.size {
            break;
        }
        if sep == 1 {
            out.push(b' ');
        }
        out.extend_from_slice(tok);
    }
    Ok(out)
}

/// Corpus shape shared by every point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub seed: u64,
    /// Distinct planted patterns per corpus.
    pub pattern_count: usize,
    pub mining: MiningParams,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            seed: 1,
            pattern_count: 50,
            mining: MiningParams::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoint {
    pub input_size: usize,
    pub pattern_len: usize,
    /// Occurrences of each planted pattern in the corpus.
    pub pattern_freq: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub pattern_len: Option<usize>,
    pub pattern_freq: Option<u64>,
    pub record: BenchRecord,
}

/// Distinct random lowercase patterns of exactly `len` bytes.
pub fn random_patterns(rng: &mut ChaCha8Rng, count: usize, len: usize) -> Vec<Vec<u8>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p: Vec<u8> = (0..len).map(|_| rng.random_range(b'a'..=b'z')).collect();
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

/// Filler text of roughly `point.input_size` bytes with each of `patterns`
/// planted exactly `point.pattern_freq` times at shuffled positions.
/// Filler words never coincide with a pattern. If the planted mass alone
/// exceeds the target size the corpus is larger than requested.
pub fn gen_planted(seed: u64, patterns: &[Vec<u8>], point: &GridPoint) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted: HashSet<&[u8]> = patterns.iter().map(Vec::as_slice).collect();
    let mut toks: Vec<Vec<u8>> = Vec::new();
    let mut bytes = 0usize;
    for p in patterns {
        for _ in 0..point.pattern_freq {
            toks.push(p.clone());
            bytes += p.len() + 1;
        }
    }
    let mut filler = Vec::with_capacity(8);
    while bytes < point.input_size {
        filler_token(&mut rng, &mut filler);
        if planted.contains(filler.as_slice()) {
            continue;
        }
        bytes += filler.len() + 1;
        toks.push(filler.clone());
    }
    toks.shuffle(&mut rng);
    toks.join(&b' ')
}

/// One row per grid point. Each point gets its own corpus (seeded from the
/// spec seed and the point index); the dictionary is mined from that corpus
/// with the planted patterns supplied as keywords.
pub fn sweep(spec: &SweepSpec, grid: &[GridPoint]) -> Result<Vec<CsvRow>> {
    if grid.is_empty() {
        return Err(Error::format("sweep grid is empty"));
    }
    spec.mining.validate()?;
    let run = |(i, point): (usize, &GridPoint)| -> Result<CsvRow> {
        let seed = spec.seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
        let patterns = random_patterns(&mut rng, spec.pattern_count, point.pattern_len);
        let text = gen_planted(seed, &patterns, point);
        let ranked = mine(&[&text], &patterns, &spec.mining)?;
        let dict = Dictionary::from_ranked(&ranked).dictionary;
        Ok(CsvRow {
            pattern_len: Some(point.pattern_len),
            pattern_freq: Some(point.pattern_freq),
            record: measure(&text, &dict)?,
        })
    };
    // points are independent
    std::thread::scope(|s| {
        let handles: Vec<_> = grid
            .iter()
            .enumerate()
            .map(|p| s.spawn(move || run(p)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    })
}

pub const CSV_HEADER: &str =
    "input_size,pattern_len,pattern_freq,dict_size,hh_size,ch_size,perf_hh,perf_ch,ratio,critical_point";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn csv_line(row: &CsvRow) -> String {
    let r = &row.record;
    format!(
        "{},{},{},{},{},{},{:.6},{:.6},{:.6},{}",
        r.input_size,
        opt(row.pattern_len),
        opt(row.pattern_freq),
        r.dict_size,
        r.hh_size,
        r.ch_size,
        r.perf_hh,
        r.perf_ch,
        r.compression_ratio,
        opt(r.critical_point),
    )
}

pub fn write_csv<W: Write>(mut w: W, rows: &[CsvRow]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", csv_line(row))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn record_formulas() {
        let r = BenchRecord::from_sizes(1000, 400, 500, 0).unwrap();
        assert_eq!(r.perf_hh, 0.4);
        assert_eq!(r.perf_ch, 0.5);
        assert!((r.compression_ratio - 0.8).abs() < 1e-12);
        assert_eq!(BenchRecord::from_sizes(0, 1, 1, 0), Err(Error::DegenerateInput));
    }

    #[test]
    fn measure_rejects_empty() {
        assert_eq!(measure(b"", &Dictionary::empty()), Err(Error::DegenerateInput));
    }

    #[test]
    fn no_matches_means_ratio_one() {
        let text = gen_synthetic(&SynthParams {
            keywords: vec![],
            ..SynthParams::cs_default(20_000, 3)
        })
        .unwrap();
        let dict = Dictionary::build(["zzzzzzzzzzzz"]).dictionary;
        let r = measure(&text, &dict).unwrap();
        assert_eq!(r.hh_size, r.ch_size);
        assert_eq!(r.compression_ratio, 1.0);
        assert_eq!(r.critical_point, None);
    }

    #[test]
    fn critical_point_examples() {
        assert_eq!(critical_point(1000, 4000, 5000), Some(2));
        assert_eq!(critical_point(0, 400, 500), Some(1));
        assert_eq!(critical_point(1000, 500, 500), None);
        assert_eq!(critical_point(1000, 600, 500), None);
    }

    #[test]
    fn generator_edge_cases() {
        let p = SynthParams::cs_default(0, 1);
        assert_eq!(gen_synthetic(&p).unwrap(), b"");

        let p = SynthParams {
            size: 99,
            seed: 4,
            keywords: vec![b"tree".to_vec()],
            zipf_s: 1.0,
            keyword_density: 1.0,
        };
        let out = gen_synthetic(&p).unwrap();
        assert_eq!(out, vec!["tree"; 20].join(" ").as_bytes());

        let bad = SynthParams {
            keyword_density: 1.5,
            ..SynthParams::cs_default(10, 1)
        };
        assert!(gen_synthetic(&bad).is_err());
        let bad = SynthParams {
            zipf_s: 0.0,
            ..SynthParams::cs_default(10, 1)
        };
        assert!(gen_synthetic(&bad).is_err());
    }

    #[test]
    fn generator_is_deterministic() {
        let p = SynthParams::cs_default(50_000, 42);
        let a = gen_synthetic(&p).unwrap();
        assert_eq!(a, gen_synthetic(&p).unwrap());
        assert_ne!(a, gen_synthetic(&SynthParams { seed: 43, ..p }).unwrap());
    }

    #[test]
    fn cs_keywords_are_valid_patterns() {
        let set: HashSet<&str> = CS_KEYWORDS.iter().copied().collect();
        assert_eq!(set.len(), CS_KEYWORDS.len());
        assert!(CS_KEYWORDS.len() >= 100);
        for k in CS_KEYWORDS {
            assert!((4..=15).contains(&k.len()), "{k}");
            assert!(crate::tokenizer::is_single_token(k.as_bytes()));
        }
    }

    #[test]
    fn planted_frequencies_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pats = random_patterns(&mut rng, 20, 4);
        let point = GridPoint { input_size: 60_000, pattern_len: 4, pattern_freq: 7 };
        let text = gen_planted(9, &pats, &point);
        let counts = crate::miner::count_tokens(&[&text]);
        for p in &pats {
            assert_eq!(counts[p], 7);
        }
        assert!(text.len().abs_diff(60_000) <= 10);
    }

    #[test]
    fn csv_format() {
        let rows = vec![
            CsvRow {
                pattern_len: Some(5),
                pattern_freq: Some(10),
                record: BenchRecord::from_sizes(1000, 400, 500, 100).unwrap(),
            },
            CsvRow {
                pattern_len: None,
                pattern_freq: None,
                record: BenchRecord::from_sizes(3, 60, 50, 8).unwrap(),
            },
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "input_size,pattern_len,pattern_freq,dict_size,hh_size,ch_size,perf_hh,perf_ch,ratio,critical_point\n\
             1000,5,10,100,400,500,0.400000,0.500000,0.800000,2\n\
             3,,,8,60,50,20.000000,16.666667,1.200000,\n"
        );
    }

    #[test]
    fn sweep_is_deterministic_and_rejects_empty_grid() {
        let spec = SweepSpec { pattern_count: 10, ..Default::default() };
        let grid = [
            GridPoint { input_size: 30_000, pattern_len: 6, pattern_freq: 20 },
            GridPoint { input_size: 30_000, pattern_len: 9, pattern_freq: 20 },
        ];
        let a = sweep(&spec, &grid).unwrap();
        assert_eq!(a, sweep(&spec, &grid).unwrap());
        assert_eq!(a.len(), 2);
        assert!(sweep(&spec, &[]).is_err());
    }

    fn linear_search(dict: u64, hh: u64, ch: u64, limit: u64) -> Option<u64> {
        (1..=limit).find(|&d| d * hh + dict < d * ch)
    }

    #[test]
    fn critical_point_matches_linear_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..1000 {
            let ch = rng.random_range(1..5_000u64);
            let hh = rng.random_range(1..5_000u64);
            let dict = rng.random_range(0..50_000u64);
            let closed = critical_point(dict, hh, ch);
            let searched = linear_search(dict, hh, ch, 1_000_000);
            assert_eq!(closed, searched, "dict={dict} hh={hh} ch={ch}");
        }
    }

    proptest! {
        #[test]
        fn crossover_property(dict in 0u64..100_000, hh in 1u64..10_000, ch in 1u64..10_000) {
            if let Some(dstar) = critical_point(dict, hh, ch) {
                prop_assert!(dstar >= 1);
                for d in [dstar, dstar + 1, dstar * 2] {
                    prop_assert!(d * hh + dict < d * ch);
                }
                for d in 1..dstar.min(2000) {
                    prop_assert!(d * hh + dict >= d * ch);
                }
                if dstar > 1 {
                    prop_assert!((dstar - 1) * hh + dict >= (dstar - 1) * ch);
                }
            } else {
                prop_assert!(ch <= hh);
            }
        }

        #[test]
        fn generator_size_bound(size in 0usize..3000, seed in any::<u64>(), density in 0.0f64..=1.0) {
            let p = SynthParams { keyword_density: density, ..SynthParams::cs_default(size, seed) };
            let out = gen_synthetic(&p).unwrap();
            prop_assert!(out.len() <= size);
            // the longest possible token plus its separator
            prop_assert!(size - out.len() <= 16);
        }

        #[test]
        fn ratio_is_perf_quotient(input in 1u64..1_000_000, hh in 1u64..1_000_000, ch in 1u64..1_000_000) {
            let r = BenchRecord::from_sizes(input, hh, ch, 0).unwrap();
            prop_assert!((r.compression_ratio - r.perf_hh / r.perf_ch).abs() <= 1e-12 * r.compression_ratio.max(1.0));
        }
    }
}
