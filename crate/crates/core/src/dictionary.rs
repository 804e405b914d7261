//! Pattern dictionary: rank-ordered patterns with implicit replacement strings.
//!
//! Rank `i` is replaced by an escape-prefixed code:
//!
//! ```text
//! rank < 254        [0x1B, rank]
//! rank >= 254       [0x1B, 0xFE, lo, hi]    (rank - 254 as u16 LE)
//! literal 0x1B      [0x1B, 0xFF]
//! ```
//!
//! Patterns in the 2-byte region are at least 3 bytes long, those in the
//! 4-byte region at least 5, so every replacement is strictly shorter than
//! the pattern it stands for.
//!
//! Serialized blob (little-endian): `"HHD1"`, `u32` entry count, then per
//! entry a `u16` length and the pattern bytes, in rank order. The digest is
//! FNV-1a 64 over the whole blob.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::tokenizer::is_single_token;

pub const ESCAPE: u8 = 0x1B;
pub const LONG_FORM: u8 = 0xFE;
pub const LITERAL_ESCAPE: u8 = 0xFF;

/// Ranks addressable with a 2-byte replacement.
pub const SHORT_SLOTS: usize = 254;
pub const MAX_ENTRIES: usize = SHORT_SLOTS + 65536;

pub const DICT_MAGIC: &[u8; 4] = b"HHD1";

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| {
        (h ^ b as u64).wrapping_mul(FNV_PRIME)
    })
}

/// Shortest pattern allowed at `rank`.
pub fn min_pattern_len(rank: usize) -> usize {
    if rank < SHORT_SLOTS {
        3
    } else {
        5
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Replacement {
    buf: [u8; 4],
    len: u8,
}

impl Replacement {
    pub fn for_rank(rank: usize) -> Option<Self> {
        if rank < SHORT_SLOTS {
            Some(Replacement {
                buf: [ESCAPE, rank as u8, 0, 0],
                len: 2,
            })
        } else if rank < MAX_ENTRIES {
            let [lo, hi] = ((rank - SHORT_SLOTS) as u16).to_le_bytes();
            Some(Replacement {
                buf: [ESCAPE, LONG_FORM, lo, hi],
                len: 4,
            })
        } else {
            None
        }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.buf[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Debug for Replacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Replacement({:02x?})", self.as_bytes())
    }
}

/// Decodes the rank of a replacement code without checking it against any
/// dictionary. `bytes` must be exactly one code.
pub fn decode_replacement(bytes: &[u8]) -> Result<usize> {
    match *bytes {
        [ESCAPE, LITERAL_ESCAPE] => Err(Error::format(
            "[1b ff] is the literal escape, not a replacement",
        )),
        [ESCAPE, b] if b < LONG_FORM => Ok(b as usize),
        [ESCAPE, LONG_FORM, lo, hi] => Ok(SHORT_SLOTS + u16::from_le_bytes([lo, hi]) as usize),
        _ => Err(Error::format(format!(
            "malformed replacement string {bytes:02x?}"
        ))),
    }
}

#[derive(Clone)]
pub struct Dictionary {
    entries: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
    digest: u64,
}

impl PartialEq for Dictionary {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for Dictionary {}

impl fmt::Debug for Dictionary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dictionary")
            .field("entries", &self.entries.len())
            .field("digest", &format_args!("{:016x}", self.digest))
            .finish()
    }
}

impl Default for Dictionary {
    fn default() -> Self {
        Self::from_checked(Vec::new())
    }
}

/// Result of [`Dictionary::build`].
#[derive(Debug, Clone)]
pub struct Built {
    pub dictionary: Dictionary,
    /// Patterns that were not eligible for the next free rank.
    pub dropped: usize,
}

impl Dictionary {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Assigns ranks in input order. A pattern that cannot take the next
    /// free rank (too short, duplicate, not a single token, or no room) is
    /// dropped and later patterns move up.
    pub fn build<I, P>(ranked: I) -> Built
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[u8]>,
    {
        let mut entries: Vec<Vec<u8>> = Vec::new();
        let mut index = HashMap::new();
        let mut dropped = 0;
        for pattern in ranked {
            let pattern = pattern.as_ref();
            let rank = entries.len();
            let eligible = rank < MAX_ENTRIES
                && pattern.len() >= min_pattern_len(rank)
                && pattern.len() <= u16::MAX as usize
                && is_single_token(pattern)
                && !index.contains_key(pattern);
            if eligible {
                index.insert(pattern.to_vec(), rank as u32);
                entries.push(pattern.to_vec());
            } else {
                dropped += 1;
            }
        }
        let digest = fnv1a64(&serialize_entries(&entries));
        Built {
            dictionary: Dictionary {
                entries,
                index,
                digest,
            },
            dropped,
        }
    }

    /// Convenience over the miner's `(token, count)` output.
    pub fn from_ranked(ranked: &[(Vec<u8>, u64)]) -> Built {
        Self::build(ranked.iter().map(|(t, _)| t))
    }

    fn from_checked(entries: Vec<Vec<u8>>) -> Self {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let digest = fnv1a64(&serialize_entries(&entries));
        Dictionary {
            entries,
            index,
            digest,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn digest(&self) -> u64 {
        self.digest
    }

    pub fn patterns(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn pattern(&self, rank: usize) -> Option<&[u8]> {
        self.entries.get(rank).map(Vec::as_slice)
    }

    pub fn rank_of(&self, pattern: &[u8]) -> Option<usize> {
        self.index.get(pattern).map(|&r| r as usize)
    }

    pub fn replacement_for(&self, rank: usize) -> Result<Replacement> {
        if rank >= self.len() {
            return Err(Error::RankOutOfRange {
                rank,
                len: self.len(),
            });
        }
        Ok(Replacement::for_rank(rank).expect("rank below MAX_ENTRIES"))
    }

    pub fn rank_for(&self, bytes: &[u8]) -> Result<usize> {
        let rank = decode_replacement(bytes)?;
        if rank >= self.len() {
            return Err(Error::UnknownPattern {
                rank,
                len: self.len(),
            });
        }
        Ok(rank)
    }

    pub fn serialize(&self) -> Vec<u8> {
        serialize_entries(&self.entries)
    }

    pub fn parse(blob: &[u8]) -> Result<Self> {
        let truncated = || Error::format("dictionary blob is truncated");
        if blob.len() < 8 {
            return Err(truncated());
        }
        if &blob[..4] != DICT_MAGIC {
            return Err(Error::format("bad dictionary magic"));
        }
        let count = u32::from_le_bytes(blob[4..8].try_into().unwrap()) as usize;
        if count > MAX_ENTRIES {
            return Err(Error::format(format!(
                "dictionary claims {count} entries, limit is {MAX_ENTRIES}"
            )));
        }
        let mut pos = 8;
        let mut entries: Vec<Vec<u8>> = Vec::with_capacity(count.min(blob.len() / 5));
        let mut seen: HashMap<&[u8], ()> = HashMap::with_capacity(count.min(blob.len() / 5));
        for rank in 0..count {
            let len_bytes = blob.get(pos..pos + 2).ok_or_else(truncated)?;
            let len = u16::from_le_bytes([len_bytes[0], len_bytes[1]]) as usize;
            pos += 2;
            let pattern = blob.get(pos..pos + len).ok_or_else(truncated)?;
            pos += len;
            if !is_single_token(pattern) {
                return Err(Error::format(format!(
                    "entry {rank} is not a single token"
                )));
            }
            if len < min_pattern_len(rank) {
                return Err(Error::format(format!(
                    "entry {rank} has length {len}, needs at least {}",
                    min_pattern_len(rank)
                )));
            }
            if seen.insert(pattern, ()).is_some() {
                return Err(Error::format(format!("entry {rank} is a duplicate")));
            }
            entries.push(pattern.to_vec());
        }
        if pos != blob.len() {
            return Err(Error::format(format!(
                "{} trailing bytes after dictionary",
                blob.len() - pos
            )));
        }
        Ok(Self::from_checked(entries))
    }
}

fn serialize_entries(entries: &[Vec<u8>]) -> Vec<u8> {
    let size = 8 + entries.iter().map(|e| e.len() + 2).sum::<usize>();
    let mut out = Vec::with_capacity(size);
    out.extend_from_slice(DICT_MAGIC);
    out.extend_from_slice(&(entries.len() as u32).to_le_bytes());
    for e in entries {
        out.extend_from_slice(&(e.len() as u16).to_le_bytes());
        out.extend_from_slice(e);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dict(patterns: &[&str]) -> Dictionary {
        let built = Dictionary::build(patterns);
        assert_eq!(built.dropped, 0);
        built.dictionary
    }

    /// Bytewise reference FNV-1a written against the published constants.
    fn fnv_reference(data: &[u8]) -> u64 {
        let mut h: u64 = 14695981039346656037;
        for &b in data {
            h ^= u64::from(b);
            h = h.wrapping_mul(1099511628211);
        }
        h
    }

    #[test]
    fn fnv_known_vectors() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn ranks_in_order() {
        let d = dict(&["tree", "heap"]);
        assert_eq!(d.rank_of(b"tree"), Some(0));
        assert_eq!(d.rank_of(b"heap"), Some(1));
        assert_eq!(d.rank_of(b"fig"), None);
    }

    #[test]
    fn short_pattern_dropped_from_long_region() {
        let pats: Vec<String> = (0..255).map(|i| format!("a{i:02x}")).collect();
        let built = Dictionary::build(&pats);
        assert_eq!(built.dictionary.len(), 254);
        assert_eq!(built.dropped, 1);
    }

    #[test]
    fn later_patterns_shift_up_after_drop() {
        let mut pats: Vec<String> = (0..254).map(|i| format!("a{i:02x}")).collect();
        pats.push("abc".into());
        pats.push("abcde".into());
        let built = Dictionary::build(&pats);
        assert_eq!(built.dropped, 1);
        assert_eq!(built.dictionary.rank_of(b"abcde"), Some(254));
    }

    #[test]
    fn build_drops_invalid_patterns() {
        let built = Dictionary::build(["tree", "ab", "tree", "two words", "heap"]);
        assert_eq!(built.dropped, 3);
        assert_eq!(built.dictionary.patterns(), &[b"tree".to_vec(), b"heap".to_vec()]);
    }

    #[test]
    fn empty_build() {
        let built = Dictionary::build(Vec::<Vec<u8>>::new());
        assert!(built.dictionary.is_empty());
        assert_eq!(built.dropped, 0);
    }

    #[test]
    fn replacement_forms() {
        let pats: Vec<String> = (0..300).map(|i| format!("p{i:04}")).collect();
        let d = dict(&pats.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(d.replacement_for(0).unwrap().as_bytes(), &[0x1B, 0x00]);
        assert_eq!(d.replacement_for(253).unwrap().as_bytes(), &[0x1B, 0xFD]);
        assert_eq!(d.replacement_for(254).unwrap().as_bytes(), &[0x1B, 0xFE, 0x00, 0x00]);
        assert_eq!(d.replacement_for(255).unwrap().as_bytes(), &[0x1B, 0xFE, 0x01, 0x00]);
        assert!(matches!(
            d.replacement_for(300),
            Err(Error::RankOutOfRange { rank: 300, len: 300 })
        ));

        assert_eq!(d.rank_for(&[0x1B, 0x07]).unwrap(), 7);
        assert_eq!(d.rank_for(&[0x1B, 0xFE, 0x05, 0x00]).unwrap(), 259);
    }

    #[test]
    fn replacement_for_max_rank() {
        let r = Replacement::for_rank(MAX_ENTRIES - 1).unwrap();
        assert_eq!(r.as_bytes(), &[0x1B, 0xFE, 0xFF, 0xFF]);
        assert_eq!(decode_replacement(r.as_bytes()).unwrap(), MAX_ENTRIES - 1);
        assert!(Replacement::for_rank(MAX_ENTRIES).is_none());
    }

    #[test]
    fn rank_for_errors() {
        let d = dict(&["tree", "heap", "list", "node"]);
        assert!(matches!(
            d.rank_for(&[0x1B, 0x10]),
            Err(Error::UnknownPattern { rank: 16, len: 4 })
        ));
        for bad in [&[0x1B, 0xFF][..], &[0x1B], &[0x1C, 0x00], &[0x1B, 0xFE, 0x00], &[]] {
            assert!(matches!(d.rank_for(bad), Err(Error::Format(_))), "{bad:02x?}");
        }
    }

    #[test]
    fn empty_blob_layout() {
        let blob = Dictionary::empty().serialize();
        assert_eq!(blob, b"HHD1\0\0\0\0");
        assert_eq!(Dictionary::empty().digest(), fnv_reference(&blob));
    }

    #[test]
    fn blob_layout_and_roundtrip() {
        let d = dict(&["tree", "heap"]);
        let blob = d.serialize();
        assert_eq!(blob, b"HHD1\x02\0\0\0\x04\0tree\x04\0heap");
        let back = Dictionary::parse(&blob).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.digest(), d.digest());
        assert_eq!(back.rank_of(b"heap"), Some(1));
    }

    #[test]
    fn byte_flips_change_digest() {
        let d = dict(&["tree", "heap", "algorithm", "pointer", "vertex"]);
        let blob = d.serialize();
        let base = fnv_reference(&blob);
        assert_eq!(base, d.digest());
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..100 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let pos = (state % blob.len() as u64) as usize;
            let mask = ((state >> 32) as u8) | 1;
            let mut flipped = blob.clone();
            flipped[pos] ^= mask;
            assert_ne!(fnv_reference(&flipped), base);
            assert_ne!(fnv1a64(&flipped), base);
        }
    }

    #[test]
    fn parse_rejects_malformed() {
        let good = dict(&["tree", "heap"]).serialize();
        let cases: Vec<Vec<u8>> = vec![
            b"HHD2\0\0\0\0".to_vec(),
            b"HHD1\0\0".to_vec(),
            good[..good.len() - 1].to_vec(),
            [good.clone(), vec![0]].concat(),
            b"HHD1\x01\0\0\0\x02\0ab".to_vec(),
            b"HHD1\x02\0\0\0\x04\0tree\x04\0tree".to_vec(),
            b"HHD1\x01\0\0\0\x04\0tr e".to_vec(),
            b"HHD1\xff\xff\xff\xff".to_vec(),
        ];
        for c in cases {
            assert!(matches!(Dictionary::parse(&c), Err(Error::Format(_))), "{c:?}");
        }
    }

    #[test]
    fn parse_rejects_short_entry_in_long_region() {
        let mut pats: Vec<Vec<u8>> = (0..254).map(|i| format!("a{i:02x}").into_bytes()).collect();
        pats.push(b"abcd".to_vec());
        let mut blob = b"HHD1".to_vec();
        blob.extend_from_slice(&(pats.len() as u32).to_le_bytes());
        for p in &pats {
            blob.extend_from_slice(&(p.len() as u16).to_le_bytes());
            blob.extend_from_slice(p);
        }
        assert!(matches!(Dictionary::parse(&blob), Err(Error::Format(_))));
    }

    #[test]
    fn bijection_exhaustive_up_to_1000() {
        let pats: Vec<String> = (0..1000).map(|i| format!("w{i:05}")).collect();
        let d = Dictionary::build(&pats).dictionary;
        assert_eq!(d.len(), 1000);
        let mut prev = 0;
        for i in 0..d.len() {
            let r = d.replacement_for(i).unwrap();
            assert_eq!(d.rank_for(r.as_bytes()).unwrap(), i);
            assert!(r.len() < d.pattern(i).unwrap().len());
            assert!(r.len() >= prev);
            prev = r.len();
        }
    }

    fn pattern_strategy() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(prop::sample::select(b"abcxyzQ_7".to_vec()), 1..9)
    }

    proptest! {
        #[test]
        fn built_dictionaries_hold_invariants(pats in prop::collection::vec(pattern_strategy(), 0..400)) {
            let built = Dictionary::build(&pats);
            let d = &built.dictionary;
            prop_assert_eq!(d.len() + built.dropped, pats.len());
            let mut prev = 0;
            for (i, p) in d.patterns().iter().enumerate() {
                let r = d.replacement_for(i).unwrap();
                prop_assert!(r.len() < p.len());
                prop_assert!(r.len() >= prev);
                prev = r.len();
                prop_assert_eq!(d.rank_of(p), Some(i));
            }
            let back = Dictionary::parse(&d.serialize()).unwrap();
            prop_assert_eq!(&back, d);
            prop_assert_eq!(back.serialize(), d.serialize());
        }
    }
}
