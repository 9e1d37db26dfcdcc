//! Lossy image codec built on modulus quantization.
//!
//! Each 8-bit sample is snapped to the nearest multiple of an odd modulus
//! (5 by default), divided down to a small index, and every 8x8 tile of
//! indices is stored as its minimum plus fixed-width deltas, or as a single
//! value when the tile is constant.
//!
//! ```
//! use fmm::{compress, decompress, quantize_image, Channels, Modulus, RasterImage};
//!
//! let img = RasterImage::new(4, 2, Channels::Gray, vec![0, 13, 77, 128, 200, 201, 254, 255])?;
//! let packed = compress(&img, Modulus::FIVE)?;
//! let back = decompress(&packed)?;
//! assert_eq!(back, quantize_image(&img, Modulus::FIVE));
//! # Ok::<(), fmm::Error>(())
//! ```

pub mod bitstream;
pub mod cli;
pub mod container;
pub mod error;
pub mod image;
pub mod metrics;
pub mod netpbm;
pub mod quant;

#[cfg(test)]
mod testdata;

pub use bitstream::{bit_length, decode_block, encode_block, BitReader, BitWriter, EncodedBlock};
pub use container::{compress, decompress, inspect, FmmHeader, Inspection};
pub use error::{Error, Result};
pub use image::{ChannelPlane, Channels, RasterImage};
pub use metrics::{compression_ratio, mse, psnr, rmse, stddev, Psnr, QualityReport};
pub use netpbm::{read_netpbm, write_netpbm};
pub use quant::{
    block_stats, from_indices, quantize_image, quantize_plane, quantize_sample, split_blocks,
    to_indices, BlockStats, Modulus, QuantizedBlock,
};
