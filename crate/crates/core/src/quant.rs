//! Modulus quantization and the compact index space.
//!
//! Every sample is snapped to the nearest multiple of an odd modulus `k`
//! (5 by default). For `k = 5` the remainder map is
//! `0 -> +0, 1 -> -1, 2 -> -2, 3 -> +2, 4 -> +1`. Dividing the snapped value by
//! `k` yields an index in `0..=255 / k`, which is what the bit-stream packs.

use std::fmt;

use crate::bitstream::bit_length;
use crate::error::{Error, Result};
use crate::image::{ChannelPlane, RasterImage};

/// Side length of a full block.
pub const BLOCK_SIZE: u32 = 8;

/// Quantization step. Always odd and within `3..=127`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus(u8);

impl Modulus {
    pub const FIVE: Modulus = Modulus(5);
    pub const MIN: u32 = 3;
    pub const MAX: u32 = 127;

    pub fn new(k: u32) -> Result<Self> {
        if !(Self::MIN..=Self::MAX).contains(&k) || k.is_multiple_of(2) {
            return Err(Error::InvalidModulus(k));
        }
        Ok(Modulus(k as u8))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Largest index a quantized sample can map to: `floor(255 / k)`.
    pub fn max_index(self) -> u8 {
        255 / self.0
    }

    /// Width in bits of the min and max-delta fields of a block header.
    /// Six for `k = 5`.
    pub fn field_width(self) -> u32 {
        bit_length(self.max_index() as u32)
    }

    /// Largest reconstruction error any sample can see.
    ///
    /// This is `floor(k / 2)` unless the multiple above `255 - (255 % k)` would
    /// overflow the 8-bit range, in which case the top samples clamp down.
    pub fn max_error(self) -> u8 {
        let k = self.0;
        let top = 255 % k;
        (k / 2).max(top)
    }
}

impl Default for Modulus {
    fn default() -> Self {
        Modulus::FIVE
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Snaps `v` to the nearest multiple of `k` that lies in `0..=255`.
///
/// `k` is odd so there are never ties.
#[inline]
pub fn quantize_sample(v: u8, k: Modulus) -> u8 {
    let k = k.0 as u16;
    let v = v as u16;
    let rem = v % k;
    let down = v - rem;
    if rem <= k / 2 || down + k > 255 {
        down as u8
    } else {
        (down + k) as u8
    }
}

pub fn quantize_samples(samples: &[u8], k: Modulus) -> Vec<u8> {
    samples.iter().map(|&v| quantize_sample(v, k)).collect()
}

pub fn quantize_plane(plane: &ChannelPlane, k: Modulus) -> ChannelPlane {
    ChannelPlane::new(
        plane.width(),
        plane.height(),
        quantize_samples(plane.samples(), k),
    )
    .expect("geometry unchanged")
}

/// Elementwise quantization of every channel. This is exactly what
/// `decompress(compress(img, k))` returns.
pub fn quantize_image(img: &RasterImage, k: Modulus) -> RasterImage {
    RasterImage::new(
        img.width(),
        img.height(),
        img.channels(),
        quantize_samples(img.samples(), k),
    )
    .expect("geometry unchanged")
}

/// Divides already-quantized samples by `k`.
pub fn to_indices(samples: &[u8], k: Modulus) -> Result<Vec<u8>> {
    samples
        .iter()
        .map(|&v| {
            if v % k.0 != 0 {
                Err(Error::NotQuantized {
                    value: v,
                    modulus: k.0,
                })
            } else {
                Ok(v / k.0)
            }
        })
        .collect()
}

/// Multiplies indices back up to samples.
pub fn from_indices(indices: &[u8], k: Modulus) -> Result<Vec<u8>> {
    let max = k.max_index();
    indices
        .iter()
        .map(|&i| {
            if i > max {
                Err(Error::IndexOutOfRange {
                    index: i as u32,
                    max: max as u32,
                })
            } else {
                Ok(i * k.0)
            }
        })
        .collect()
}

/// Position and size of one tile in a plane's block grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockGeometry {
    pub block_row: u32,
    pub block_col: u32,
    pub rows: u8,
    pub cols: u8,
}

impl BlockGeometry {
    pub fn len(&self) -> usize {
        self.rows as usize * self.cols as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Tiling of a `width x height` plane into blocks of at most 8x8.
///
/// Edge blocks keep their true size (`width % 8` columns on the right,
/// `height % 8` rows at the bottom); nothing is padded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockGrid {
    width: u32,
    height: u32,
}

impl BlockGrid {
    pub fn new(width: u32, height: u32) -> Self {
        BlockGrid { width, height }
    }

    pub fn blocks_across(&self) -> u32 {
        self.width.div_ceil(BLOCK_SIZE)
    }

    pub fn blocks_down(&self) -> u32 {
        self.height.div_ceil(BLOCK_SIZE)
    }

    pub fn block_count(&self) -> usize {
        self.blocks_across() as usize * self.blocks_down() as usize
    }

    /// Geometry of the block at grid position `(block_row, block_col)`.
    pub fn geometry(&self, block_row: u32, block_col: u32) -> Option<BlockGeometry> {
        if block_row >= self.blocks_down() || block_col >= self.blocks_across() {
            return None;
        }
        Some(BlockGeometry {
            block_row,
            block_col,
            rows: (self.height - block_row * BLOCK_SIZE).min(BLOCK_SIZE) as u8,
            cols: (self.width - block_col * BLOCK_SIZE).min(BLOCK_SIZE) as u8,
        })
    }

    /// Blocks in row-major block order.
    pub fn iter(&self) -> impl Iterator<Item = BlockGeometry> + '_ {
        (0..self.blocks_down()).flat_map(move |br| {
            (0..self.blocks_across()).filter_map(move |bc| self.geometry(br, bc))
        })
    }
}

/// A tile cut from a plane, samples row-major within the tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub geometry: BlockGeometry,
    pub samples: Vec<u8>,
}

pub fn split_blocks(plane: &ChannelPlane) -> Vec<Block> {
    let width = plane.width() as usize;
    let data = plane.samples();
    BlockGrid::new(plane.width(), plane.height())
        .iter()
        .map(|g| {
            let x0 = (g.block_col * BLOCK_SIZE) as usize;
            let y0 = (g.block_row * BLOCK_SIZE) as usize;
            let mut samples = Vec::with_capacity(g.len());
            for y in y0..y0 + g.rows as usize {
                let start = y * width + x0;
                samples.extend_from_slice(&data[start..start + g.cols as usize]);
            }
            Block {
                geometry: g,
                samples,
            }
        })
        .collect()
}

/// Inverse of [`split_blocks`]. Every grid position must be supplied exactly once.
pub fn merge_blocks(width: u32, height: u32, blocks: &[Block]) -> Result<ChannelPlane> {
    let grid = BlockGrid::new(width, height);
    if blocks.len() != grid.block_count() {
        return Err(Error::Mismatch(format!(
            "{} blocks supplied, {width}x{height} needs {}",
            blocks.len(),
            grid.block_count()
        )));
    }
    let w = width as usize;
    let mut samples = vec![0u8; w * height as usize];
    let mut seen = vec![false; grid.block_count()];
    for block in blocks {
        let g = block.geometry;
        if grid.geometry(g.block_row, g.block_col) != Some(g) || block.samples.len() != g.len() {
            return Err(Error::Mismatch(format!(
                "block at ({}, {}) does not fit the grid",
                g.block_row, g.block_col
            )));
        }
        let slot = g.block_row as usize * grid.blocks_across() as usize + g.block_col as usize;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(Error::Mismatch(format!(
                "block ({}, {}) supplied twice",
                g.block_row, g.block_col
            )));
        }
        let x0 = (g.block_col * BLOCK_SIZE) as usize;
        let y0 = (g.block_row * BLOCK_SIZE) as usize;
        for (r, row) in block.samples.chunks(g.cols as usize).enumerate() {
            let start = (y0 + r) * w + x0;
            samples[start..start + row.len()].copy_from_slice(row);
        }
    }
    ChannelPlane::new(width, height, samples)
}

/// An up-to-8x8 tile of indices in `0..=k.max_index()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizedBlock {
    rows: u8,
    cols: u8,
    indices: Vec<u8>,
    modulus: Modulus,
}

impl QuantizedBlock {
    pub fn new(rows: u8, cols: u8, indices: Vec<u8>, modulus: Modulus) -> Result<Self> {
        if !(1..=BLOCK_SIZE as u8).contains(&rows) || !(1..=BLOCK_SIZE as u8).contains(&cols) {
            return Err(Error::InvalidGeometry(format!(
                "block of {rows}x{cols}, sides must be 1..=8"
            )));
        }
        if indices.len() != rows as usize * cols as usize {
            return Err(Error::InvalidGeometry(format!(
                "{} indices for a {rows}x{cols} block",
                indices.len()
            )));
        }
        let max = modulus.max_index();
        if let Some(&bad) = indices.iter().find(|&&i| i > max) {
            return Err(Error::IndexOutOfRange {
                index: bad as u32,
                max: max as u32,
            });
        }
        Ok(QuantizedBlock {
            rows,
            cols,
            indices,
            modulus,
        })
    }

    pub fn rows(&self) -> u8 {
        self.rows
    }

    pub fn cols(&self) -> u8 {
        self.cols
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn stats(&self) -> BlockStats {
        block_stats(self)
    }

    /// Indices with the block minimum subtracted.
    pub fn deltas(&self) -> Vec<u8> {
        let min = self.stats().min_index;
        self.indices.iter().map(|&i| i - min).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockStats {
    pub min_index: u8,
    pub max_delta: u8,
}

pub fn block_stats(block: &QuantizedBlock) -> BlockStats {
    // QuantizedBlock is never empty
    let min = *block.indices.iter().min().unwrap();
    let max = *block.indices.iter().max().unwrap();
    BlockStats {
        min_index: min,
        max_delta: max - min,
    }
}
