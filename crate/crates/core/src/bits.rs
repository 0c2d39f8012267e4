//! Bit strings, fixed-width fields and Elias gamma codes, most significant
//! bit first.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (63 - i % 64)) & 1 == 1
    }

    pub fn push_bit(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            let i = self.len;
            self.words[i / 64] |= 1 << (63 - i % 64);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`.
    pub fn push(&mut self, value: u64, width: u32) -> Result<()> {
        if width < 64 && value >> width != 0 {
            return Err(Error::WidthOverflow { value, width });
        }
        for k in (0..width).rev() {
            self.push_bit((value >> k) & 1 == 1);
        }
        Ok(())
    }

    /// Elias gamma code of a positive integer: `floor(log2 v)` zeros, then
    /// `v` in binary.
    pub fn push_gamma(&mut self, value: u64) {
        assert!(value > 0, "gamma code needs a positive value");
        let width = 64 - value.leading_zeros();
        for _ in 1..width {
            self.push_bit(false);
        }
        self.push(value, width).expect("fits by construction");
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { bits: self, pos: 0 }
    }

    /// Hex digits of the bits, padded with zeros to a whole nibble.
    pub fn to_hex(&self) -> String {
        let mut out = String::with_capacity(self.len.div_ceil(4));
        for start in (0..self.len).step_by(4) {
            let mut nibble = 0u32;
            for k in 0..4 {
                let i = start + k;
                nibble = nibble << 1 | u32::from(i < self.len && self.get(i));
            }
            out.push(char::from_digit(nibble, 16).expect("nibble"));
        }
        out
    }

    pub fn from_hex(hex: &str, len: usize) -> Result<Self> {
        if hex.len() != len.div_ceil(4) {
            return Err(Error::MalformedLabel(format!("{} hex digits cannot hold exactly {len} bits", hex.len())));
        }
        let mut bits = BitString::new();
        for ch in hex.chars() {
            let nibble = ch.to_digit(16).ok_or_else(|| Error::MalformedLabel(format!("bad hex digit {ch:?}")))?;
            for k in (0..4).rev() {
                if bits.len < len {
                    bits.push_bit((nibble >> k) & 1 == 1);
                } else if (nibble >> k) & 1 == 1 {
                    return Err(Error::MalformedLabel("nonzero padding".into()));
                }
            }
        }
        Ok(bits)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

pub struct BitReader<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl BitReader<'_> {
    pub fn remaining(&self) -> usize {
        self.bits.len - self.pos
    }

    pub fn bit(&mut self) -> Result<bool> {
        if self.pos >= self.bits.len {
            return Err(Error::MalformedLabel("truncated".into()));
        }
        let b = self.bits.get(self.pos);
        self.pos += 1;
        Ok(b)
    }

    pub fn read(&mut self, width: u32) -> Result<u64> {
        if width > 64 {
            return Err(Error::MalformedLabel(format!("field width {width}")));
        }
        if self.remaining() < width as usize {
            return Err(Error::MalformedLabel("truncated".into()));
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = v << 1 | u64::from(self.bits.get(self.pos));
            self.pos += 1;
        }
        Ok(v)
    }

    pub fn gamma(&mut self) -> Result<u64> {
        let mut zeros = 0u32;
        while !self.bit()? {
            zeros += 1;
            if zeros >= 64 {
                return Err(Error::MalformedLabel("gamma prefix too long".into()));
            }
        }
        let rest = self.read(zeros)?;
        Ok(1 << zeros | rest)
    }

    pub fn finish(self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::MalformedLabel(format!("{} trailing bits", self.remaining())));
        }
        Ok(())
    }
}

/// Bits needed to write every value in `0..=max`; zero for `max == 0`.
pub fn width_for(max: u64) -> u32 {
    64 - max.leading_zeros()
}

pub fn gamma_len(value: u64) -> usize {
    2 * width_for(value) as usize - 1
}
