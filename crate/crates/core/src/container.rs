//! On-disk container for the two-level pipeline.
//!
//! Layout (little-endian):
//!
//! ```text
//! "HHC1"  u8 version  u8 flags  u64 dict_digest
//! [flags & EMBEDDED: u32 blob_len, dictionary blob]
//! code table
//! u64 symbol_count  u64 payload_len  payload
//! ```
//!
//! With `HUFFMAN_ONLY` set the payload is plain Huffman over the input and
//! no dictionary is needed to decode it.

use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::huffman::{self, CodeBook, FrequencyTable};
use crate::transform::{decode_level1, encode_level1};

pub const MAGIC: &[u8; 4] = b"HHC1";
pub const VERSION: u8 = 1;

pub const FLAG_EMBEDDED: u8 = 0b01;
pub const FLAG_HUFFMAN_ONLY: u8 = 0b10;

/// magic + version + flags + digest
pub const FIXED_HEADER_LEN: usize = 4 + 1 + 1 + 8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompressOptions {
    pub embed: bool,
    pub huffman_only: bool,
}

impl CompressOptions {
    pub fn flags(&self) -> u8 {
        (self.embed as u8 * FLAG_EMBEDDED) | (self.huffman_only as u8 * FLAG_HUFFMAN_ONLY)
    }
}

/// Header summary produced by [`inspect`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerInfo {
    pub version: u8,
    pub flags: u8,
    pub dict_digest: u64,
    pub embedded_dict_len: Option<usize>,
    pub table_len: usize,
    pub code_symbols: usize,
    pub symbol_count: u64,
    pub payload_len: usize,
    pub total_len: usize,
}

impl ContainerInfo {
    pub fn embedded(&self) -> bool {
        self.flags & FLAG_EMBEDDED != 0
    }

    pub fn huffman_only(&self) -> bool {
        self.flags & FLAG_HUFFMAN_ONLY != 0
    }
}

pub fn compress(text: &[u8], dict: &Dictionary, opts: CompressOptions) -> Vec<u8> {
    let level1;
    let stream: &[u8] = if opts.huffman_only {
        text
    } else {
        level1 = encode_level1(text, dict);
        &level1
    };
    let book = CodeBook::build(&FrequencyTable::from_bytes(stream));
    let (payload, symbol_count) =
        huffman::encode(stream, &book).expect("code book built from the same bytes");

    let blob = opts.embed.then(|| dict.serialize());
    let table = book.serialize_table();
    let mut out = Vec::with_capacity(
        FIXED_HEADER_LEN
            + blob.as_ref().map_or(0, |b| b.len() + 4)
            + table.len()
            + 16
            + payload.len(),
    );
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(opts.flags());
    out.extend_from_slice(&dict.digest().to_le_bytes());
    if let Some(blob) = &blob {
        out.extend_from_slice(&(blob.len() as u32).to_le_bytes());
        out.extend_from_slice(blob);
    }
    out.extend_from_slice(&table);
    out.extend_from_slice(&symbol_count.to_le_bytes());
    out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    out.extend_from_slice(&payload);
    out
}

struct Parsed<'a> {
    info: ContainerInfo,
    blob: Option<&'a [u8]>,
    book: CodeBook,
    payload: &'a [u8],
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.data.len());
        match end {
            Some(end) => {
                let s = &self.data[self.pos..end];
                self.pos = end;
                Ok(s)
            }
            None => Err(Error::format(format!("container truncated in {what}"))),
        }
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

fn parse(data: &[u8]) -> Result<Parsed<'_>> {
    let mut c = Cursor { data, pos: 0 };
    if c.take(4, "magic")? != MAGIC {
        return Err(Error::format("not a container (bad magic)"));
    }
    let version = c.take(1, "version")?[0];
    if version != VERSION {
        return Err(Error::format(format!("unsupported container version {version}")));
    }
    let flags = c.take(1, "flags")?[0];
    if flags & !(FLAG_EMBEDDED | FLAG_HUFFMAN_ONLY) != 0 {
        return Err(Error::format(format!("unknown flag bits {flags:#04x}")));
    }
    let dict_digest = c.u64("digest")?;
    let blob = if flags & FLAG_EMBEDDED != 0 {
        let len = u32::from_le_bytes(c.take(4, "dictionary length")?.try_into().unwrap());
        Some(c.take(len as usize, "dictionary")?)
    } else {
        None
    };
    let (book, table_len) = CodeBook::read_table(&data[c.pos..])?;
    c.pos += table_len;
    let symbol_count = c.u64("symbol count")?;
    let payload_len = c.u64("payload length")?;
    let payload_len = usize::try_from(payload_len)
        .map_err(|_| Error::format("payload length overflows"))?;
    let payload = c.take(payload_len, "payload")?;
    if c.pos != data.len() {
        return Err(Error::format(format!(
            "{} trailing bytes after payload",
            data.len() - c.pos
        )));
    }
    Ok(Parsed {
        info: ContainerInfo {
            version,
            flags,
            dict_digest,
            embedded_dict_len: blob.map(<[u8]>::len),
            table_len,
            code_symbols: book.symbol_count(),
            symbol_count,
            payload_len,
            total_len: data.len(),
        },
        blob,
        book,
        payload,
    })
}

/// Reads the header and section sizes without decoding the payload.
pub fn inspect(data: &[u8]) -> Result<ContainerInfo> {
    parse(data).map(|p| p.info)
}

/// `resolve` maps a digest to a dictionary; it is only consulted for
/// two-level containers without an embedded dictionary.
pub fn decompress<F>(data: &[u8], resolve: F) -> Result<Vec<u8>>
where
    F: FnOnce(u64) -> Option<Dictionary>,
{
    let p = parse(data)?;
    let digest = p.info.dict_digest;
    let embedded = match p.blob {
        Some(blob) => {
            let d = Dictionary::parse(blob)?;
            if d.digest() != digest {
                return Err(Error::DictionaryMismatch {
                    expected: digest,
                    found: d.digest(),
                });
            }
            Some(d)
        }
        None => None,
    };

    let stream = huffman::decode(p.payload, &p.book, p.info.symbol_count)?;
    if p.info.huffman_only() {
        return Ok(stream);
    }
    let dict = match embedded {
        Some(d) => d,
        None => {
            let d = resolve(digest).ok_or(Error::DictionaryUnavailable(digest))?;
            if d.digest() != digest {
                return Err(Error::DictionaryMismatch {
                    expected: digest,
                    found: d.digest(),
                });
            }
            d
        }
    };
    decode_level1(&stream, &dict)
}

/// Decompress with a single known dictionary (or none).
pub fn decompress_with(data: &[u8], dict: Option<&Dictionary>) -> Result<Vec<u8>> {
    decompress(data, |_| dict.cloned())
}
