//! The `.fmm` file format.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "FMM1"
//! 4       1     version (1)
//! 5       1     modulus, odd, 3..=127
//! 6       4     width, big-endian
//! 10      4     height, big-endian
//! 14      1     channels (1 or 3)
//! 15      ...   per channel: u32 big-endian byte length, then the packed
//!               block stream, final byte zero-padded
//! ```
//!
//! Each channel stream holds `ceil(height/8) * ceil(width/8)` blocks in
//! row-major block order. Edge blocks are encoded at their true size.

use std::thread;

use crate::bitstream::{encode_block, BitReader, BitWriter, EncodedBlock};
use crate::error::{Error, Result};
use crate::image::{ChannelPlane, Channels, RasterImage};
use crate::quant::{
    from_indices, merge_blocks, quantize_plane, split_blocks, to_indices, Block, BlockGeometry,
    BlockGrid, Modulus, QuantizedBlock,
};

pub const MAGIC: [u8; 4] = *b"FMM1";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 15;
const LENGTH_PREFIX: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FmmHeader {
    pub modulus: Modulus,
    pub width: u32,
    pub height: u32,
    pub channels: Channels,
}

impl FmmHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.modulus.get();
        out[6..10].copy_from_slice(&self.width.to_be_bytes());
        out[10..14].copy_from_slice(&self.height.to_be_bytes());
        out[14] = self.channels.count() as u8;
        out
    }

    pub fn parse(data: &[u8]) -> Result<Self> {
        if data.len() < HEADER_LEN {
            return Err(Error::Format(format!(
                "{} bytes is too short for the {HEADER_LEN}-byte header",
                data.len()
            )));
        }
        if data[..4] != MAGIC {
            return Err(Error::Format(format!("bad magic {:02x?}", &data[..4])));
        }
        if data[4] != VERSION {
            return Err(Error::Format(format!("unsupported version {}", data[4])));
        }
        let modulus = Modulus::new(data[5] as u32)
            .map_err(|_| Error::Format(format!("invalid modulus {}", data[5])))?;
        let width = u32::from_be_bytes(data[6..10].try_into().unwrap());
        let height = u32::from_be_bytes(data[10..14].try_into().unwrap());
        if width == 0 || height == 0 {
            return Err(Error::Format(format!("zero dimension {width}x{height}")));
        }
        let channels = Channels::from_count(data[14] as u32)
            .map_err(|_| Error::Format(format!("invalid channel count {}", data[14])))?;
        Ok(FmmHeader {
            modulus,
            width,
            height,
            channels,
        })
    }

    pub fn grid(&self) -> BlockGrid {
        BlockGrid::new(self.width, self.height)
    }
}

/// Encodes one plane into a packed block stream.
pub fn encode_plane(plane: &ChannelPlane, k: Modulus) -> BitWriter {
    let quantized = quantize_plane(plane, k);
    let indices = ChannelPlane::new(
        plane.width(),
        plane.height(),
        to_indices(quantized.samples(), k).expect("quantized samples divide by k"),
    )
    .expect("geometry unchanged");
    // 13 bits overhead plus ~4 bits per sample is typical
    let mut out = BitWriter::with_capacity_bits(plane.samples().len() * 5);
    for block in split_blocks(&indices) {
        let g = block.geometry;
        let qb = QuantizedBlock::new(g.rows, g.cols, block.samples, k).expect("indices in range");
        encode_block(&qb, &mut out);
    }
    out
}

/// Compresses `img` with modulus `k`. Output is a pure function of the inputs.
pub fn compress(img: &RasterImage, k: Modulus) -> Result<Vec<u8>> {
    let header = FmmHeader {
        modulus: k,
        width: img.width(),
        height: img.height(),
        channels: img.channels(),
    };
    let planes = img.planes();
    let streams: Vec<BitWriter> = if planes.len() > 1 {
        thread::scope(|s| {
            let handles: Vec<_> = planes
                .iter()
                .map(|p| s.spawn(move || encode_plane(p, k)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    } else {
        planes.iter().map(|p| encode_plane(p, k)).collect()
    };

    let total: usize = streams
        .iter()
        .map(|s| LENGTH_PREFIX + s.as_bytes().len())
        .sum();
    let mut out = Vec::with_capacity(HEADER_LEN + total);
    out.extend_from_slice(&header.to_bytes());
    for stream in &streams {
        let bytes = stream.as_bytes();
        let len = u32::try_from(bytes.len())
            .map_err(|_| Error::Domain("channel stream exceeds 4 GiB".into()))?;
        out.extend_from_slice(&len.to_be_bytes());
        out.extend_from_slice(bytes);
    }
    Ok(out)
}

/// One decoded block together with its position and encoded size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRecord {
    pub geometry: BlockGeometry,
    pub encoded: EncodedBlock,
    pub bits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelRecord {
    pub stream_bytes: usize,
    pub stream_bits: usize,
    pub blocks: Vec<BlockRecord>,
}

/// Full structural dump of a container.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inspection {
    pub header: FmmHeader,
    pub channels: Vec<ChannelRecord>,
}

/// Splits the container into its header and raw channel streams.
fn split_streams(data: &[u8]) -> Result<(FmmHeader, Vec<&[u8]>)> {
    let header = FmmHeader::parse(data)?;
    let mut rest = &data[HEADER_LEN..];
    let mut streams = Vec::with_capacity(header.channels.count());
    for _ in 0..header.channels.count() {
        if rest.len() < LENGTH_PREFIX {
            return Err(Error::Truncated {
                needed: LENGTH_PREFIX * 8,
                available: rest.len() * 8,
            });
        }
        let len = u32::from_be_bytes(rest[..LENGTH_PREFIX].try_into().unwrap()) as usize;
        rest = &rest[LENGTH_PREFIX..];
        if rest.len() < len {
            return Err(Error::Truncated {
                needed: len * 8,
                available: rest.len() * 8,
            });
        }
        let (stream, tail) = rest.split_at(len);
        streams.push(stream);
        rest = tail;
    }
    if !rest.is_empty() {
        return Err(Error::Corrupt(format!(
            "{} trailing bytes after the last channel",
            rest.len()
        )));
    }
    Ok((header, streams))
}

fn read_channel(stream: &[u8], header: &FmmHeader) -> Result<ChannelRecord> {
    let k = header.modulus;
    let grid = header.grid();
    let min_bits = grid.block_count() as u128 * (k.field_width() as u128 + 1);
    if (stream.len() as u128) * 8 < min_bits {
        return Err(Error::Truncated {
            needed: min_bits.min(usize::MAX as u128) as usize,
            available: stream.len() * 8,
        });
    }
    let mut reader = BitReader::new(stream);
    let mut blocks = Vec::with_capacity(grid.block_count());
    for g in grid.iter() {
        let start = reader.bit_position();
        let encoded = EncodedBlock::read(&mut reader, g.rows, g.cols, k)?;
        blocks.push(BlockRecord {
            geometry: g,
            encoded,
            bits: reader.bit_position() - start,
        });
    }
    let used = reader.bit_position();
    if stream.len() != used.div_ceil(8) {
        return Err(Error::Corrupt(format!(
            "stream is {} bytes but the block grid needs {}",
            stream.len(),
            used.div_ceil(8)
        )));
    }
    let pad = reader.remaining();
    if pad > 0 && reader.read_bits(pad as u32)? != 0 {
        return Err(Error::Corrupt("nonzero padding bits".into()));
    }
    Ok(ChannelRecord {
        stream_bytes: stream.len(),
        stream_bits: used,
        blocks,
    })
}

/// Parses and validates every block without reconstructing samples.
pub fn inspect(data: &[u8]) -> Result<Inspection> {
    let (header, streams) = split_streams(data)?;
    let channels = streams
        .into_iter()
        .map(|s| read_channel(s, &header))
        .collect::<Result<_>>()?;
    Ok(Inspection { header, channels })
}

fn rebuild_plane(record: ChannelRecord, header: &FmmHeader) -> Result<ChannelPlane> {
    let k = header.modulus;
    let blocks = record
        .blocks
        .into_iter()
        .map(|b| {
            let g = b.geometry;
            let qb = b.encoded.into_block(g.rows, g.cols, k)?;
            Ok(Block {
                geometry: g,
                samples: from_indices(qb.indices(), k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    merge_blocks(header.width, header.height, &blocks)
}

/// Decodes a container back to the quantized image.
pub fn decompress(data: &[u8]) -> Result<RasterImage> {
    let (header, streams) = split_streams(data)?;
    let planes = if streams.len() > 1 {
        thread::scope(|s| {
            let handles: Vec<_> = streams
                .iter()
                .map(|&st| s.spawn(move || rebuild_plane(read_channel(st, &header)?, &header)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().unwrap())
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        streams
            .iter()
            .map(|&st| rebuild_plane(read_channel(st, &header)?, &header))
            .collect::<Result<Vec<_>>>()?
    };
    RasterImage::from_planes(&planes)
}
