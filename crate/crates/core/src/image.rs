//! Raster images and single-channel planes.
//!
//! Samples are stored row-major with channels interleaved (`RGBRGB...` for
//! colour images), the same layout binary netpbm uses on disk.

use crate::error::{Error, Result};

/// Number of interleaved channels in a [`RasterImage`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channels {
    Gray = 1,
    Rgb = 3,
}

impl Channels {
    pub fn count(self) -> usize {
        self as usize
    }

    pub fn from_count(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Channels::Gray),
            3 => Ok(Channels::Rgb),
            other => Err(Error::InvalidGeometry(format!(
                "channel count {other}, expected 1 or 3"
            ))),
        }
    }
}

/// A width x height x channels grid of 8-bit samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    channels: Channels,
    samples: Vec<u8>,
}

impl RasterImage {
    pub fn new(width: u32, height: u32, channels: Channels, samples: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidGeometry(format!(
                "{width}x{height}: both dimensions must be at least 1"
            )));
        }
        let expected = pixel_count(width, height)
            .checked_mul(channels.count())
            .ok_or_else(|| Error::InvalidGeometry("image too large".into()))?;
        if samples.len() != expected {
            return Err(Error::InvalidGeometry(format!(
                "{} samples supplied, {width}x{height}x{} needs {expected}",
                samples.len(),
                channels.count()
            )));
        }
        Ok(RasterImage {
            width,
            height,
            channels,
            samples,
        })
    }

    /// Builds an image from one plane per channel. Planes must share geometry.
    pub fn from_planes(planes: &[ChannelPlane]) -> Result<Self> {
        let channels = Channels::from_count(planes.len() as u32)?;
        let (width, height) = (planes[0].width, planes[0].height);
        if planes
            .iter()
            .any(|p| p.width != width || p.height != height)
        {
            return Err(Error::Mismatch("planes differ in size".into()));
        }
        let n = channels.count();
        let mut samples = vec![0u8; planes[0].samples.len() * n];
        for (c, plane) in planes.iter().enumerate() {
            for (dst, &s) in samples.iter_mut().skip(c).step_by(n).zip(&plane.samples) {
                *dst = s;
            }
        }
        RasterImage::new(width, height, channels, samples)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> Channels {
        self.channels
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }

    /// Uncompressed size in bytes (one byte per sample).
    pub fn byte_len(&self) -> usize {
        self.samples.len()
    }

    /// De-interleaves channel `c`.
    pub fn plane(&self, c: usize) -> ChannelPlane {
        let n = self.channels.count();
        assert!(c < n, "channel {c} out of range for {n}-channel image");
        ChannelPlane {
            width: self.width,
            height: self.height,
            samples: self.samples.iter().skip(c).step_by(n).copied().collect(),
        }
    }

    pub fn planes(&self) -> Vec<ChannelPlane> {
        (0..self.channels.count()).map(|c| self.plane(c)).collect()
    }
}

/// One channel of an image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelPlane {
    width: u32,
    height: u32,
    samples: Vec<u8>,
}

impl ChannelPlane {
    pub fn new(width: u32, height: u32, samples: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidGeometry(format!(
                "{width}x{height}: both dimensions must be at least 1"
            )));
        }
        if samples.len() != pixel_count(width, height) {
            return Err(Error::InvalidGeometry(format!(
                "{} samples supplied, {width}x{height} plane needs {}",
                samples.len(),
                pixel_count(width, height)
            )));
        }
        Ok(ChannelPlane {
            width,
            height,
            samples,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }

    pub fn get(&self, row: u32, col: u32) -> u8 {
        self.samples[row as usize * self.width as usize + col as usize]
    }
}

fn pixel_count(width: u32, height: u32) -> usize {
    width as usize * height as usize
}
