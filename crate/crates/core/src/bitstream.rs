//! MSB-first bit packing and the per-block stream grammar.
//!
//! A block is written as
//!
//! ```text
//! min_index   W bits
//! repetition  1 bit      1 = every index equals min_index, nothing follows
//! max_delta   W bits     only when repetition = 0
//! deltas      rows*cols values of bit_length(max_delta) bits, row-major
//! ```
//!
//! where `W = bit_length(255 / k)`, six bits for the default modulus.

use crate::error::{Error, Result};
use crate::quant::{Modulus, QuantizedBlock, BLOCK_SIZE};

/// Position of the highest set bit plus one; zero for zero.
#[inline]
pub fn bit_length(v: u32) -> u32 {
    u32::BITS - v.leading_zeros()
}

/// Appends bits most-significant first. Unused bits of the final byte stay zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitWriter {
    buf: Vec<u8>,
    bit_len: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity_bits(bits: usize) -> Self {
        BitWriter {
            buf: Vec::with_capacity(bits.div_ceil(8)),
            bit_len: 0,
        }
    }

    /// Appends the low `width` bits of `value`.
    pub fn write_bits(&mut self, value: u32, width: u32) -> Result<()> {
        if !(1..=32).contains(&width) {
            return Err(Error::InvalidBitWidth(width));
        }
        if width < 32 && value >> width != 0 {
            return Err(Error::ValueTooWide { value, width });
        }
        let value = value as u64;
        let mut remaining = width;
        while remaining > 0 {
            let used = (self.bit_len % 8) as u32;
            if used == 0 {
                self.buf.push(0);
            }
            let free = 8 - used;
            let take = free.min(remaining);
            let chunk = (value >> (remaining - take)) & ((1 << take) - 1);
            *self.buf.last_mut().unwrap() |= (chunk << (free - take)) as u8;
            remaining -= take;
            self.bit_len += take as usize;
        }
        Ok(())
    }

    pub fn write_bit(&mut self, bit: bool) {
        self.write_bits(bit as u32, 1).expect("one bit always fits");
    }

    /// Bits written so far.
    pub fn bit_position(&self) -> usize {
        self.bit_len
    }

    /// Packed bytes, final partial byte zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.buf
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    /// The written bits as a string of `0` and `1`.
    pub fn to_bit_string(&self) -> String {
        let mut reader = BitReader::with_bit_len(&self.buf, self.bit_len);
        (0..self.bit_len)
            .map(|_| if reader.read_bit().unwrap() { '1' } else { '0' })
            .collect()
    }
}

/// Reads bits most-significant first from a borrowed buffer.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    buf: &'a [u8],
    pos: usize,
    limit: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        BitReader {
            buf,
            pos: 0,
            limit: buf.len() * 8,
        }
    }

    /// Reader that treats only the first `bits` bits of `buf` as data.
    pub fn with_bit_len(buf: &'a [u8], bits: usize) -> Self {
        BitReader {
            buf,
            pos: 0,
            limit: bits.min(buf.len() * 8),
        }
    }

    pub fn read_bits(&mut self, width: u32) -> Result<u32> {
        if !(1..=32).contains(&width) {
            return Err(Error::InvalidBitWidth(width));
        }
        if self.remaining() < width as usize {
            return Err(Error::Truncated {
                needed: width as usize,
                available: self.remaining(),
            });
        }
        let mut value = 0u64;
        let mut remaining = width;
        while remaining > 0 {
            let byte = self.buf[self.pos / 8];
            let used = (self.pos % 8) as u32;
            let avail = 8 - used;
            let take = avail.min(remaining);
            let chunk = (byte >> (avail - take)) as u64 & ((1 << take) - 1);
            value = (value << take) | chunk;
            remaining -= take;
            self.pos += take as usize;
        }
        Ok(value as u32)
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        Ok(self.read_bits(1)? == 1)
    }

    pub fn bit_position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.limit - self.pos
    }
}

/// The protocol fields of one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedBlock {
    pub min_index: u8,
    pub repetition: bool,
    /// Zero when `repetition` is set.
    pub max_delta: u8,
    /// Empty when `repetition` is set.
    pub deltas: Vec<u8>,
}

impl EncodedBlock {
    pub fn from_block(block: &QuantizedBlock) -> Self {
        let stats = block.stats();
        if stats.max_delta == 0 {
            EncodedBlock {
                min_index: stats.min_index,
                repetition: true,
                max_delta: 0,
                deltas: Vec::new(),
            }
        } else {
            EncodedBlock {
                min_index: stats.min_index,
                repetition: false,
                max_delta: stats.max_delta,
                deltas: block.deltas(),
            }
        }
    }

    /// Bits per delta.
    pub fn delta_width(&self) -> u32 {
        bit_length(self.max_delta as u32)
    }

    /// Bits spent on deltas alone.
    pub fn delta_bits(&self) -> usize {
        self.deltas.len() * self.delta_width() as usize
    }

    pub fn bit_len(&self, k: Modulus) -> usize {
        let w = k.field_width() as usize;
        if self.repetition {
            w + 1
        } else {
            2 * w + 1 + self.delta_bits()
        }
    }

    pub fn write(&self, out: &mut BitWriter, k: Modulus) -> Result<()> {
        let w = k.field_width();
        out.write_bits(self.min_index as u32, w)?;
        out.write_bit(self.repetition);
        if !self.repetition {
            out.write_bits(self.max_delta as u32, w)?;
            let dw = self.delta_width();
            for &d in &self.deltas {
                out.write_bits(d as u32, dw)?;
            }
        }
        Ok(())
    }

    /// Reads and validates one block's fields. Non-canonical encodings are
    /// rejected so that every block has exactly one valid bit pattern.
    pub fn read(input: &mut BitReader<'_>, rows: u8, cols: u8, k: Modulus) -> Result<Self> {
        if !(1..=BLOCK_SIZE as u8).contains(&rows) || !(1..=BLOCK_SIZE as u8).contains(&cols) {
            return Err(Error::InvalidGeometry(format!(
                "block of {rows}x{cols}, sides must be 1..=8"
            )));
        }
        let w = k.field_width();
        let max_index = k.max_index() as u32;
        let min_index = input.read_bits(w)?;
        if min_index > max_index {
            return Err(Error::IndexOutOfRange {
                index: min_index,
                max: max_index,
            });
        }
        if input.read_bit()? {
            return Ok(EncodedBlock {
                min_index: min_index as u8,
                repetition: true,
                max_delta: 0,
                deltas: Vec::new(),
            });
        }
        let max_delta = input.read_bits(w)?;
        if max_delta == 0 {
            return Err(Error::Corrupt("mixed block declares max delta 0".into()));
        }
        if min_index + max_delta > max_index {
            return Err(Error::IndexOutOfRange {
                index: min_index + max_delta,
                max: max_index,
            });
        }
        let dw = bit_length(max_delta);
        let n = rows as usize * cols as usize;
        let mut deltas = Vec::with_capacity(n);
        for _ in 0..n {
            let d = input.read_bits(dw)?;
            if d > max_delta {
                return Err(Error::Corrupt(format!(
                    "delta {d} exceeds declared max {max_delta}"
                )));
            }
            deltas.push(d as u8);
        }
        if !deltas.contains(&0) || !deltas.contains(&(max_delta as u8)) {
            return Err(Error::Corrupt(
                "block deltas do not span 0..=max delta".into(),
            ));
        }
        Ok(EncodedBlock {
            min_index: min_index as u8,
            repetition: false,
            max_delta: max_delta as u8,
            deltas,
        })
    }

    pub fn into_block(self, rows: u8, cols: u8, k: Modulus) -> Result<QuantizedBlock> {
        let n = rows as usize * cols as usize;
        let indices = if self.repetition {
            vec![self.min_index; n]
        } else {
            self.deltas.iter().map(|&d| self.min_index + d).collect()
        };
        QuantizedBlock::new(rows, cols, indices, k)
    }
}

/// Appends `block` to `out` and returns the number of bits written.
pub fn encode_block(block: &QuantizedBlock, out: &mut BitWriter) -> usize {
    let start = out.bit_position();
    EncodedBlock::from_block(block)
        .write(out, block.modulus())
        .expect("block fields fit their widths");
    out.bit_position() - start
}

/// Reads one block of the given size from `input`.
pub fn decode_block(
    input: &mut BitReader<'_>,
    rows: u8,
    cols: u8,
    k: Modulus,
) -> Result<QuantizedBlock> {
    EncodedBlock::read(input, rows, cols, k)?.into_block(rows, cols, k)
}
