//! Fidelity and size measures.
//!
//! All arithmetic is `f64`; rounding happens only when values are displayed.

use std::fmt;

use crate::error::{Error, Result};
use crate::image::RasterImage;

/// Peak sample value of 8-bit data.
pub const PEAK_8BIT: f64 = 255.0;

/// Peak signal-to-noise ratio, or a marker for identical inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Lossless,
    Decibels(f64),
}

impl Psnr {
    pub fn decibels(self) -> Option<f64> {
        match self {
            Psnr::Lossless => None,
            Psnr::Decibels(db) => Some(db),
        }
    }

    pub fn is_lossless(self) -> bool {
        matches!(self, Psnr::Lossless)
    }

    /// PSNR for a given mean squared error and peak value.
    pub fn from_mse(mse: f64, peak: f64) -> Psnr {
        if mse == 0.0 {
            Psnr::Lossless
        } else {
            Psnr::Decibels(20.0 * (peak / mse.sqrt()).log10())
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Lossless => f.write_str("lossless"),
            Psnr::Decibels(db) => write!(f, "{db:.4} dB"),
        }
    }
}

/// Which peak value the PSNR numerator uses.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Peak {
    /// 255, the usual convention for 8-bit data.
    #[default]
    Fixed8Bit,
    /// The largest sample of the original image.
    OriginalMax,
}

fn check_same_shape(a: &RasterImage, b: &RasterImage) -> Result<()> {
    if a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels() {
        return Err(Error::Mismatch(format!(
            "{}x{}x{} vs {}x{}x{}",
            a.width(),
            a.height(),
            a.channels().count(),
            b.width(),
            b.height(),
            b.channels().count()
        )));
    }
    Ok(())
}

/// Mean squared difference of two equal-length sample runs.
pub fn mse_samples(original: &[u8], reconstructed: &[u8]) -> Result<f64> {
    if original.len() != reconstructed.len() {
        return Err(Error::Mismatch(format!(
            "{} samples vs {}",
            original.len(),
            reconstructed.len()
        )));
    }
    if original.is_empty() {
        return Err(Error::Domain("no samples to compare".into()));
    }
    let sum: u64 = original
        .iter()
        .zip(reconstructed)
        .map(|(&p, &q)| {
            let d = p.abs_diff(q) as u64;
            d * d
        })
        .sum();
    Ok(sum as f64 / original.len() as f64)
}

pub fn mse(original: &RasterImage, reconstructed: &RasterImage) -> Result<f64> {
    check_same_shape(original, reconstructed)?;
    mse_samples(original.samples(), reconstructed.samples())
}

pub fn rmse(original: &RasterImage, reconstructed: &RasterImage) -> Result<f64> {
    mse(original, reconstructed).map(f64::sqrt)
}

/// PSNR against a fixed peak of 255.
pub fn psnr(original: &RasterImage, reconstructed: &RasterImage) -> Result<Psnr> {
    psnr_with_peak(original, reconstructed, Peak::Fixed8Bit)
}

/// PSNR with a selectable peak. With [`Peak::OriginalMax`] an all-black
/// original gives negative infinity unless the images are identical.
pub fn psnr_with_peak(
    original: &RasterImage,
    reconstructed: &RasterImage,
    peak: Peak,
) -> Result<Psnr> {
    let mse = mse(original, reconstructed)?;
    let peak = match peak {
        Peak::Fixed8Bit => PEAK_8BIT,
        Peak::OriginalMax => original.samples().iter().copied().max().unwrap_or(0) as f64,
    };
    Ok(Psnr::from_mse(mse, peak))
}

/// Uncompressed size over compressed size. Units only need to agree.
pub fn compression_ratio(original: u64, compressed: u64) -> Result<f64> {
    if original == 0 || compressed == 0 {
        return Err(Error::Domain(format!(
            "compression ratio needs nonzero sizes, got {original} and {compressed}"
        )));
    }
    Ok(original as f64 / compressed as f64)
}

/// Sample standard deviation (divides by `n - 1`). A single sample has zero
/// dispersion.
pub fn stddev(samples: &[u8]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Domain(
            "standard deviation of an empty sequence".into(),
        ));
    }
    if samples.len() == 1 {
        return Ok(0.0);
    }
    // Welford
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &s) in samples.iter().enumerate() {
        let x = s as f64;
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    Ok((m2 / (samples.len() - 1) as f64).sqrt())
}

/// Everything `compare` reports for an original/reconstructed pair.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub rmse: f64,
    pub psnr: Psnr,
    /// Present once sizes are attached with [`QualityReport::with_sizes`].
    pub cr: Option<f64>,
    pub sigma_original: Vec<f64>,
    pub sigma_reconstructed: Vec<f64>,
}

impl QualityReport {
    pub fn compare(original: &RasterImage, reconstructed: &RasterImage) -> Result<Self> {
        let mse = mse(original, reconstructed)?;
        let sigmas = |img: &RasterImage| {
            img.planes()
                .iter()
                .map(|p| stddev(p.samples()))
                .collect::<Result<Vec<_>>>()
        };
        Ok(QualityReport {
            mse,
            rmse: mse.sqrt(),
            psnr: Psnr::from_mse(mse, PEAK_8BIT),
            cr: None,
            sigma_original: sigmas(original)?,
            sigma_reconstructed: sigmas(reconstructed)?,
        })
    }

    pub fn with_sizes(mut self, original_bytes: u64, compressed_bytes: u64) -> Result<Self> {
        self.cr = Some(compression_ratio(original_bytes, compressed_bytes)?);
        Ok(self)
    }
}
