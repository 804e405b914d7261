//! Two-level text compression for domain-specific corpora.
//!
//! Level 1 swaps frequent words for short escape codes drawn from a mined
//! [`Dictionary`]; level 2 runs canonical byte-level Huffman coding over the
//! result. The same container format also carries plain Huffman output so
//! the two schemes can be compared byte for byte.
//!
//! ```
//! use hierhuff::{compress, decompress_with, mine, CompressOptions, Dictionary, MiningParams};
//!
//! let corpus = "the tree and the heap ".repeat(20);
//! let ranked = mine(&[&corpus], &["vertex"], &MiningParams::default()).unwrap();
//! let dict = Dictionary::from_ranked(&ranked).dictionary;
//!
//! let packed = compress(corpus.as_bytes(), &dict, CompressOptions::default());
//! assert_eq!(decompress_with(&packed, Some(&dict)).unwrap(), corpus.as_bytes());
//! ```

pub mod bench;
pub mod bitio;
pub mod container;
pub mod dictionary;
pub mod error;
pub mod huffman;
pub mod miner;
pub mod tokenizer;
pub mod transform;

pub use bench::{critical_point, gen_synthetic, measure, sweep, BenchRecord, GridPoint, SweepSpec, SynthParams};
pub use container::{compress, decompress, decompress_with, inspect, CompressOptions, ContainerInfo};
pub use dictionary::{Dictionary, Replacement};
pub use error::{Error, Result};
pub use huffman::{build_codebook, CodeBook, FrequencyTable};
pub use miner::{classify, count_tokens, mine, select_patterns, Cluster, MiningParams, PatternStats};
pub use tokenizer::{tokenize, Segment, SegmentKind};
pub use transform::{decode_level1, encode_level1};
