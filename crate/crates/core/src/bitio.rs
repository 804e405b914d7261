/// MSB-first bit writer. The final partial byte is zero-padded.
#[derive(Debug, Default)]
pub struct BitWriter {
    buf: Vec<u8>,
    acc: u64,
    nbits: u32,
}

impl BitWriter {
    pub fn with_capacity(bytes: usize) -> Self {
        BitWriter {
            buf: Vec::with_capacity(bytes),
            acc: 0,
            nbits: 0,
        }
    }

    /// Writes the low `len` bits of `value`, most significant first.
    pub fn write(&mut self, value: u128, len: u32) {
        let mut left = len;
        while left > 0 {
            let take = left.min(32);
            left -= take;
            let chunk = ((value >> left) as u64) & ((1u64 << take) - 1);
            self.acc = (self.acc << take) | chunk;
            self.nbits += take;
            while self.nbits >= 8 {
                self.nbits -= 8;
                self.buf.push((self.acc >> self.nbits) as u8);
            }
            self.acc &= (1u64 << self.nbits) - 1;
        }
    }

    pub fn bit_len(&self) -> u64 {
        self.buf.len() as u64 * 8 + self.nbits as u64
    }

    pub fn finish(mut self) -> Vec<u8> {
        if self.nbits > 0 {
            self.buf.push((self.acc << (8 - self.nbits)) as u8);
        }
        self.buf
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        BitReader { data, pos: 0 }
    }

    #[inline]
    pub fn read_bit(&mut self) -> Option<u8> {
        let byte = *self.data.get((self.pos >> 3) as usize)?;
        let bit = (byte >> (7 - (self.pos & 7))) & 1;
        self.pos += 1;
        Some(bit)
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    /// True when every unread bit is zero and lies in the current byte.
    pub fn only_padding_left(&self) -> bool {
        let total = self.data.len() as u64 * 8;
        if total - self.pos >= 8 {
            return false;
        }
        let mut r = self.clone();
        while let Some(b) = r.read_bit() {
            if b != 0 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first_packing() {
        let mut w = BitWriter::default();
        w.write(0b0, 1);
        w.write(0b1, 1);
        w.write(0b0, 1);
        assert_eq!(w.bit_len(), 3);
        assert_eq!(w.finish(), [0x40]);
    }

    #[test]
    fn wide_values_cross_bytes() {
        let mut w = BitWriter::default();
        w.write(0xABC, 12);
        w.write((1u128 << 70) | 1, 71);
        let out = w.finish();
        assert_eq!(out.len(), 11);
        let mut r = BitReader::new(&out);
        let mut v = 0u128;
        for _ in 0..12 {
            v = (v << 1) | r.read_bit().unwrap() as u128;
        }
        assert_eq!(v, 0xABC);
        let mut v = 0u128;
        for _ in 0..71 {
            v = (v << 1) | r.read_bit().unwrap() as u128;
        }
        assert_eq!(v, (1u128 << 70) | 1);
        assert!(r.only_padding_left());
    }

    #[test]
    fn padding_check() {
        let r = BitReader::new(&[0xFF, 0x80]);
        assert!(!r.only_padding_left());
        let mut r = BitReader::new(&[0xC1]);
        r.read_bit();
        r.read_bit();
        assert!(!r.only_padding_left());
        let mut r = BitReader::new(&[0xC0]);
        r.read_bit();
        r.read_bit();
        assert!(r.only_padding_left());
    }
}
