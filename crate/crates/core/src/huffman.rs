//! Byte-level Huffman coding with canonical codewords.
//!
//! Code lengths come from a min-heap merge where ties are broken by
//! `(weight, smallest symbol in the subtree)`, which makes the book a pure
//! function of the frequency table. Only `(symbol, length)` pairs travel on
//! the wire; codewords are reassigned canonically on both sides.
//!
//! Table format (little-endian): `u16` number of present symbols, then one
//! `(u8 symbol, u8 length)` pair per symbol in ascending symbol order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::bitio::{BitReader, BitWriter};
use crate::error::{Error, Result};

/// Longest code length accepted from a serialized table.
pub const MAX_CODE_LEN: u8 = 127;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: [u64; 256],
}

impl Default for FrequencyTable {
    fn default() -> Self {
        FrequencyTable { counts: [0; 256] }
    }
}

impl FrequencyTable {
    pub fn from_bytes(data: &[u8]) -> Self {
        let mut counts = [0u64; 256];
        for &b in data {
            counts[b as usize] += 1;
        }
        FrequencyTable { counts }
    }

    pub fn from_counts(counts: [u64; 256]) -> Self {
        FrequencyTable { counts }
    }

    pub fn count(&self, symbol: u8) -> u64 {
        self.counts[symbol as usize]
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CodeBook {
    lengths: [u8; 256],
    codes: [u128; 256],
}

impl std::fmt::Debug for CodeBook {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for s in self.symbols() {
            let len = self.lengths[s as usize] as usize;
            m.entry(&s, &format_args!("{:0len$b}", self.codes[s as usize]));
        }
        m.finish()
    }
}

impl Default for CodeBook {
    fn default() -> Self {
        CodeBook {
            lengths: [0; 256],
            codes: [0; 256],
        }
    }
}

impl CodeBook {
    pub fn build(freqs: &FrequencyTable) -> Self {
        Self::from_lengths_unchecked(huffman_lengths(freqs.counts()))
    }

    /// Assigns canonical codewords: symbols sorted by (length, value) get
    /// consecutive codes starting from zero.
    fn from_lengths_unchecked(lengths: [u8; 256]) -> Self {
        let mut order: Vec<u8> = (0..=255u8).filter(|&s| lengths[s as usize] > 0).collect();
        order.sort_by_key(|&s| (lengths[s as usize], s));
        let mut codes = [0u128; 256];
        let mut code: u128 = 0;
        let mut prev_len = 0u8;
        for (i, &s) in order.iter().enumerate() {
            let len = lengths[s as usize];
            if i > 0 {
                code += 1;
            }
            code <<= len - prev_len;
            prev_len = len;
            codes[s as usize] = code;
        }
        CodeBook { lengths, codes }
    }

    /// Validates lengths (Kraft, single-symbol rule) before assigning codes.
    pub fn from_lengths(lengths: [u8; 256]) -> Result<Self> {
        let present: Vec<u8> = lengths.iter().copied().filter(|&l| l > 0).collect();
        if let Some(&l) = present.iter().find(|&&l| l > MAX_CODE_LEN) {
            return Err(Error::format(format!(
                "code length {l} exceeds {MAX_CODE_LEN}"
            )));
        }
        let one = 1u128 << MAX_CODE_LEN;
        let mut kraft: u128 = 0;
        for &l in &present {
            kraft += 1u128 << (MAX_CODE_LEN - l);
            if kraft > one {
                return Err(Error::format("code lengths violate the Kraft inequality"));
            }
        }
        match present.len() {
            0 => {}
            1 if present[0] != 1 => {
                return Err(Error::format("a lone symbol must have a 1-bit code"));
            }
            1 => {}
            _ if kraft != one => {
                return Err(Error::format("code lengths do not form a complete prefix code"));
            }
            _ => {}
        }
        Ok(Self::from_lengths_unchecked(lengths))
    }

    pub fn length(&self, symbol: u8) -> u8 {
        self.lengths[symbol as usize]
    }

    pub fn code(&self, symbol: u8) -> Option<(u128, u8)> {
        match self.lengths[symbol as usize] {
            0 => None,
            l => Some((self.codes[symbol as usize], l)),
        }
    }

    pub fn lengths(&self) -> &[u8; 256] {
        &self.lengths
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        (0..=255u8).filter(|&s| self.lengths[s as usize] > 0)
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols().count()
    }

    pub fn is_empty(&self) -> bool {
        self.symbol_count() == 0
    }

    /// Bits needed to encode data with these symbol counts.
    pub fn encoded_bits(&self, freqs: &FrequencyTable) -> u64 {
        freqs
            .counts()
            .iter()
            .zip(self.lengths.iter())
            .map(|(&c, &l)| c * l as u64)
            .sum()
    }

    pub fn serialize_table(&self) -> Vec<u8> {
        let syms: Vec<u8> = self.symbols().collect();
        let mut out = Vec::with_capacity(2 + 2 * syms.len());
        out.extend_from_slice(&(syms.len() as u16).to_le_bytes());
        for s in syms {
            out.push(s);
            out.push(self.lengths[s as usize]);
        }
        out
    }

    pub fn table_size(&self) -> usize {
        2 + 2 * self.symbol_count()
    }

    /// Reads a table from the front of `data`; returns the book and the
    /// number of bytes consumed.
    pub fn read_table(data: &[u8]) -> Result<(Self, usize)> {
        let truncated = || Error::format("code table is truncated");
        let head = data.get(..2).ok_or_else(truncated)?;
        let n = u16::from_le_bytes([head[0], head[1]]) as usize;
        if n > 256 {
            return Err(Error::format(format!("code table lists {n} symbols")));
        }
        let pairs = data.get(2..2 + 2 * n).ok_or_else(truncated)?;
        let mut lengths = [0u8; 256];
        let mut prev: Option<u8> = None;
        for pair in pairs.chunks_exact(2) {
            let (sym, len) = (pair[0], pair[1]);
            if prev.is_some_and(|p| sym <= p) {
                return Err(Error::format(format!(
                    "symbol 0x{sym:02x} is duplicated or out of order"
                )));
            }
            if len == 0 {
                return Err(Error::format(format!("symbol 0x{sym:02x} has length 0")));
            }
            prev = Some(sym);
            lengths[sym as usize] = len;
        }
        Ok((Self::from_lengths(lengths)?, 2 + 2 * n))
    }

    pub fn parse_table(data: &[u8]) -> Result<Self> {
        let (book, used) = Self::read_table(data)?;
        if used != data.len() {
            return Err(Error::format("trailing bytes after code table"));
        }
        Ok(book)
    }
}

/// Depths of an optimal Huffman tree. Ties in the heap are broken by the
/// smallest symbol a subtree contains.
fn huffman_lengths(counts: &[u64; 256]) -> [u8; 256] {
    let mut lengths = [0u8; 256];
    let leaves: Vec<u8> = (0..=255u8).filter(|&s| counts[s as usize] > 0).collect();
    match leaves.len() {
        0 => return lengths,
        1 => {
            lengths[leaves[0] as usize] = 1;
            return lengths;
        }
        _ => {}
    }

    // node i < leaves.len() is a leaf; parents[i] links every node upward
    let mut parents: Vec<usize> = vec![usize::MAX; 2 * leaves.len() - 1];
    let mut heap: BinaryHeap<Reverse<(u64, u8, usize)>> = leaves
        .iter()
        .enumerate()
        .map(|(i, &s)| Reverse((counts[s as usize], s, i)))
        .collect();
    let mut next = leaves.len();
    while heap.len() > 1 {
        let Reverse((w1, s1, a)) = heap.pop().unwrap();
        let Reverse((w2, s2, b)) = heap.pop().unwrap();
        parents[a] = next;
        parents[b] = next;
        heap.push(Reverse((w1 + w2, s1.min(s2), next)));
        next += 1;
    }

    // parents always have larger indices, so walk top-down
    let mut depth = vec![0u8; parents.len()];
    for i in (0..parents.len() - 1).rev() {
        depth[i] = depth[parents[i]] + 1;
    }
    for (i, &s) in leaves.iter().enumerate() {
        lengths[s as usize] = depth[i];
    }
    lengths
}

pub fn build_codebook(freqs: &FrequencyTable) -> CodeBook {
    CodeBook::build(freqs)
}

/// Returns the packed bitstream and the number of symbols written.
pub fn encode(data: &[u8], book: &CodeBook) -> Result<(Vec<u8>, u64)> {
    let freqs = FrequencyTable::from_bytes(data);
    if let Some(s) = (0..=255u8).find(|&s| freqs.count(s) > 0 && book.length(s) == 0) {
        return Err(Error::Coverage(s));
    }
    let bits = book.encoded_bits(&freqs);
    let mut w = BitWriter::with_capacity(bits.div_ceil(8) as usize);
    for &b in data {
        w.write(book.codes[b as usize], book.lengths[b as usize] as u32);
    }
    Ok((w.finish(), data.len() as u64))
}

/// Canonical decoding tables indexed by code length.
struct Decoder {
    first_code: Vec<u128>,
    first_index: Vec<usize>,
    count: Vec<usize>,
    sorted: Vec<u8>,
    max_len: usize,
}

impl Decoder {
    fn new(book: &CodeBook) -> Self {
        let mut sorted: Vec<u8> = book.symbols().collect();
        sorted.sort_by_key(|&s| (book.length(s), s));
        let max_len = sorted.last().map_or(0, |&s| book.length(s) as usize);
        let mut count = vec![0usize; max_len + 1];
        for &s in &sorted {
            count[book.length(s) as usize] += 1;
        }
        let mut first_code = vec![0u128; max_len + 1];
        let mut first_index = vec![0usize; max_len + 1];
        let mut code: u128 = 0;
        let mut index = 0;
        for len in 1..=max_len {
            code = (code + count[len - 1] as u128) << 1;
            first_code[len] = code;
            first_index[len] = index;
            index += count[len];
        }
        Decoder {
            first_code,
            first_index,
            count,
            sorted,
            max_len,
        }
    }

    #[inline]
    fn next(&self, r: &mut BitReader<'_>) -> Option<std::result::Result<u8, ()>> {
        if self.max_len == 0 {
            r.read_bit()?;
            return Some(Err(()));
        }
        let mut code: u128 = 0;
        for len in 1..=self.max_len {
            code = (code << 1) | r.read_bit()? as u128;
            let first = self.first_code[len];
            if code >= first && code - first < self.count[len] as u128 {
                return Some(Ok(self.sorted[self.first_index[len] + (code - first) as usize]));
            }
        }
        Some(Err(()))
    }
}

pub fn decode(bits: &[u8], book: &CodeBook, symbol_count: u64) -> Result<Vec<u8>> {
    let mut r = BitReader::new(bits);
    let dec = Decoder::new(book);
    let mut out = Vec::with_capacity(symbol_count.min(bits.len() as u64 * 8) as usize);
    for decoded in 0..symbol_count {
        let start = r.position();
        match dec.next(&mut r) {
            Some(Ok(s)) => out.push(s),
            Some(Err(())) => {
                return Err(Error::corrupt((start / 8) as usize, "bits match no codeword"))
            }
            None => {
                return Err(Error::Truncated {
                    decoded,
                    expected: symbol_count,
                })
            }
        }
    }
    if !r.only_padding_left() {
        return Err(Error::TrailingGarbage);
    }
    Ok(out)
}
