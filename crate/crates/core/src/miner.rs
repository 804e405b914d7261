//! Frequent pattern mining over a training corpus.
//!
//! Tokens are counted, split into four clusters by a length threshold and a
//! frequency threshold, and only the frequent-long cluster is kept. Domain
//! keywords are merged in unconditionally. The survivors are ranked by the
//! bytes they are expected to save once replaced by a 2-byte code.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use crate::dictionary::MAX_ENTRIES;
use crate::error::{Error, Result};
use crate::tokenizer::{is_single_token, tokens};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cluster {
    InfrequentShort,
    InfrequentLong,
    FrequentShort,
    FrequentLong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternStats {
    pub token: Vec<u8>,
    pub count: u64,
    pub cluster: Cluster,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MiningParams {
    pub min_len: usize,
    pub min_freq: u64,
    pub max_entries: usize,
}

impl Default for MiningParams {
    fn default() -> Self {
        MiningParams {
            min_len: 3,
            min_freq: 10,
            max_entries: MAX_ENTRIES,
        }
    }
}

impl MiningParams {
    pub fn new(min_len: usize, min_freq: u64, max_entries: usize) -> Result<Self> {
        let p = MiningParams {
            min_len,
            min_freq,
            max_entries,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_len < 3 {
            return Err(Error::format(format!(
                "minimum pattern length must be at least 3, got {}",
                self.min_len
            )));
        }
        if self.min_freq < 1 {
            return Err(Error::format("minimum frequency must be at least 1"));
        }
        if self.max_entries > MAX_ENTRIES {
            return Err(Error::format(format!(
                "max entries must be at most {MAX_ENTRIES}, got {}",
                self.max_entries
            )));
        }
        Ok(())
    }

    pub fn cluster_of(&self, token: &[u8], count: u64) -> Cluster {
        match (count >= self.min_freq, token.len() >= self.min_len) {
            (true, true) => Cluster::FrequentLong,
            (true, false) => Cluster::FrequentShort,
            (false, true) => Cluster::InfrequentLong,
            (false, false) => Cluster::InfrequentShort,
        }
    }
}

pub type TokenCounts = HashMap<Vec<u8>, u64>;

pub fn count_tokens<T: AsRef<[u8]>>(corpus: &[T]) -> TokenCounts {
    let mut counts = TokenCounts::new();
    for text in corpus {
        add_counts(&mut counts, text.as_ref());
    }
    counts
}

pub fn add_counts(counts: &mut TokenCounts, text: &[u8]) {
    for tok in tokens(text) {
        match counts.get_mut(tok) {
            Some(c) => *c += 1,
            None => {
                counts.insert(tok.to_vec(), 1);
            }
        }
    }
}

/// Labels every token. Output is sorted by token bytes so it is reproducible.
pub fn classify(counts: &TokenCounts, params: &MiningParams) -> Vec<PatternStats> {
    let mut stats: Vec<PatternStats> = counts
        .iter()
        .map(|(tok, &count)| PatternStats {
            token: tok.clone(),
            count,
            cluster: params.cluster_of(tok, count),
        })
        .collect();
    stats.sort_unstable_by(|a, b| a.token.cmp(&b.token));
    stats
}

fn score(token: &[u8], count: u64) -> u128 {
    count as u128 * token.len().saturating_sub(2) as u128
}

/// Descending savings, then descending count, then ascending bytes.
fn rank_order(a: &(Vec<u8>, u64), b: &(Vec<u8>, u64)) -> Ordering {
    score(&b.0, b.1)
        .cmp(&score(&a.0, a.1))
        .then(b.1.cmp(&a.1))
        .then_with(|| a.0.cmp(&b.0))
}

pub fn check_keyword(keyword: &[u8], params: &MiningParams) -> Result<()> {
    let reject = |reason: String| Error::RejectedKeyword {
        keyword: String::from_utf8_lossy(keyword).into_owned(),
        reason,
    };
    if !is_single_token(keyword) {
        return Err(reject("contains bytes outside [A-Za-z0-9_]".into()));
    }
    if keyword.len() < params.min_len {
        return Err(reject(format!(
            "shorter than the minimum pattern length {}",
            params.min_len
        )));
    }
    Ok(())
}

/// Frequent-long tokens plus keywords, ranked and truncated to capacity.
pub fn select_patterns<K: AsRef<[u8]>>(
    stats: &[PatternStats],
    keywords: &[K],
    params: &MiningParams,
) -> Result<Vec<(Vec<u8>, u64)>> {
    for kw in keywords {
        check_keyword(kw.as_ref(), params)?;
    }

    let mut seen: HashSet<&[u8]> = HashSet::new();
    let mut ranked: Vec<(Vec<u8>, u64)> = Vec::new();
    for s in stats {
        if s.cluster == Cluster::FrequentLong && seen.insert(&s.token) {
            ranked.push((s.token.clone(), s.count));
        }
    }

    let observed: HashMap<&[u8], u64> = stats.iter().map(|s| (&s.token[..], s.count)).collect();
    for kw in keywords {
        let kw = kw.as_ref();
        if seen.insert(kw) {
            let count = observed.get(kw).copied().unwrap_or(0).max(params.min_freq);
            ranked.push((kw.to_vec(), count));
        }
    }

    ranked.sort_unstable_by(rank_order);
    ranked.truncate(params.max_entries);
    Ok(ranked)
}

/// count, classify and select in one go.
pub fn mine<T: AsRef<[u8]>, K: AsRef<[u8]>>(
    corpus: &[T],
    keywords: &[K],
    params: &MiningParams,
) -> Result<Vec<(Vec<u8>, u64)>> {
    params.validate()?;
    let counts = count_tokens(corpus);
    select_patterns(&classify(&counts, params), keywords, params)
}

/// Keyword file: one per line, blank lines and `#` comments skipped.
pub fn parse_keyword_file(data: &[u8]) -> Vec<Vec<u8>> {
    data.split(|&b| b == b'\n')
        .map(|line| line.strip_suffix(b"\r").unwrap_or(line))
        .filter(|line| !line.is_empty() && !line.starts_with(b"#"))
        .map(<[u8]>::to_vec)
        .collect()
}
