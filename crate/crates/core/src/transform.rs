//! Level-1 substitution: whole tokens that match a dictionary pattern are
//! swapped for their replacement string. A literal escape byte in the input
//! is written as `[0x1B, 0xFF]`.

use crate::dictionary::{Dictionary, Replacement, ESCAPE, LITERAL_ESCAPE, LONG_FORM, SHORT_SLOTS};
use crate::error::{Error, Result};
use crate::tokenizer::{segments, SegmentKind};

pub fn encode_level1(text: &[u8], dict: &Dictionary) -> Vec<u8> {
    let mut out = Vec::with_capacity(text.len());
    for seg in segments(text) {
        let bytes = seg.bytes(text);
        match seg.kind {
            SegmentKind::Token => match dict.rank_of(bytes) {
                Some(rank) => out.extend_from_slice(
                    Replacement::for_rank(rank)
                        .expect("dictionary ranks are addressable")
                        .as_bytes(),
                ),
                None => out.extend_from_slice(bytes),
            },
            // escape bytes are never token bytes, so only gaps need the check
            SegmentKind::Gap => {
                for &b in bytes {
                    out.push(b);
                    if b == ESCAPE {
                        out.push(LITERAL_ESCAPE);
                    }
                }
            }
        }
    }
    out
}

pub fn decode_level1(data: &[u8], dict: &Dictionary) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(data.len() + data.len() / 2);
    let mut pos = 0;
    while pos < data.len() {
        let Some(off) = data[pos..].iter().position(|&b| b == ESCAPE) else {
            out.extend_from_slice(&data[pos..]);
            break;
        };
        out.extend_from_slice(&data[pos..pos + off]);
        let at = pos + off;
        let rank = match data.get(at + 1) {
            None => return Err(Error::corrupt(at, "dangling escape byte")),
            Some(&LITERAL_ESCAPE) => {
                out.push(ESCAPE);
                pos = at + 2;
                continue;
            }
            Some(&LONG_FORM) => {
                let Some(idx) = data.get(at + 2..at + 4) else {
                    return Err(Error::corrupt(at, "truncated 4-byte replacement"));
                };
                pos = at + 4;
                SHORT_SLOTS + u16::from_le_bytes([idx[0], idx[1]]) as usize
            }
            Some(&b) => {
                pos = at + 2;
                b as usize
            }
        };
        match dict.pattern(rank) {
            Some(p) => out.extend_from_slice(p),
            None => {
                return Err(Error::corrupt(
                    at,
                    format!("rank {rank} not in dictionary of {} entries", dict.len()),
                ))
            }
        }
    }
    Ok(out)
}
