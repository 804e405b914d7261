//! Splits text into maximal runs of word bytes (`[A-Za-z0-9_]`) and the gaps
//! between them. Level-1 substitution only ever looks at whole tokens.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    Token,
    Gap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub offset: usize,
    pub len: usize,
}

impl Segment {
    pub fn range(&self) -> Range<usize> {
        self.offset..self.offset + self.len
    }

    pub fn bytes<'a>(&self, source: &'a [u8]) -> &'a [u8] {
        &source[self.range()]
    }

    pub fn is_token(&self) -> bool {
        self.kind == SegmentKind::Token
    }
}

#[inline]
pub fn is_token_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// True when `s` is non-empty and made only of token bytes.
pub fn is_single_token(s: &[u8]) -> bool {
    !s.is_empty() && s.iter().all(|&b| is_token_byte(b))
}

/// Iterator over the segments of a text. Allocation-free.
#[derive(Debug, Clone)]
pub struct Segments<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Iterator for Segments<'a> {
    type Item = Segment;

    fn next(&mut self) -> Option<Segment> {
        let start = self.pos;
        let first = *self.text.get(start)?;
        let want = is_token_byte(first);
        let len = self.text[start..]
            .iter()
            .position(|&b| is_token_byte(b) != want)
            .unwrap_or(self.text.len() - start);
        self.pos = start + len;
        Some(Segment {
            kind: if want {
                SegmentKind::Token
            } else {
                SegmentKind::Gap
            },
            offset: start,
            len,
        })
    }
}

pub fn segments(text: &[u8]) -> Segments<'_> {
    Segments { text, pos: 0 }
}

pub fn tokenize(text: &[u8]) -> Vec<Segment> {
    segments(text).collect()
}

/// Token slices only, in order of appearance.
pub fn tokens(text: &[u8]) -> impl Iterator<Item = &[u8]> {
    segments(text)
        .filter(Segment::is_token)
        .map(move |s| s.bytes(text))
}
