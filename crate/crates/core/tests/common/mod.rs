#![allow(dead_code)]

use fmm::{Channels, RasterImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

#[rustfmt::skip]
pub const TABLE_2: [u8; 64] = [
    221, 232, 231, 242, 246, 247, 251, 250,
    220, 227, 231, 236, 242, 241, 250, 251,
    221, 215, 221, 232, 240, 247, 251, 251,
    217, 216, 216, 225, 237, 241, 245, 247,
    216, 221, 217, 222, 231, 235, 242, 247,
    220, 216, 222, 215, 227, 231, 242, 247,
    216, 216, 211, 216, 222, 227, 237, 247,
    217, 216, 211, 216, 217, 222, 237, 235,
];

#[rustfmt::skip]
pub const TABLE_3: [u8; 64] = [
    220, 230, 230, 240, 245, 245, 250, 250,
    220, 225, 230, 235, 240, 245, 250, 250,
    220, 215, 220, 230, 240, 245, 250, 250,
    215, 215, 215, 225, 235, 240, 245, 245,
    215, 220, 215, 220, 230, 235, 240, 245,
    220, 215, 220, 215, 225, 230, 240, 245,
    215, 215, 210, 215, 220, 225, 235, 245,
    215, 215, 210, 215, 215, 220, 235, 235,
];

#[rustfmt::skip]
pub const TABLE_4: [u8; 64] = [
    44, 46, 46, 48, 49, 49, 50, 50,
    44, 45, 46, 47, 48, 49, 50, 50,
    44, 43, 44, 46, 48, 49, 50, 50,
    43, 43, 43, 45, 47, 48, 49, 49,
    43, 44, 43, 44, 46, 47, 48, 49,
    44, 43, 44, 43, 45, 46, 48, 49,
    43, 43, 42, 43, 44, 45, 47, 49,
    43, 43, 42, 43, 43, 44, 47, 47,
];

#[rustfmt::skip]
pub const TABLE_5: [u8; 64] = [
    2, 4, 4, 6, 7, 7, 8, 8,
    2, 3, 4, 5, 6, 7, 8, 8,
    2, 1, 2, 4, 6, 7, 8, 8,
    1, 1, 1, 3, 5, 6, 7, 7,
    1, 2, 1, 2, 4, 5, 6, 7,
    2, 1, 2, 1, 3, 4, 6, 7,
    1, 1, 0, 1, 2, 3, 5, 7,
    1, 1, 0, 1, 1, 2, 5, 5,
];

pub fn gray(width: u32, height: u32, samples: Vec<u8>) -> RasterImage {
    RasterImage::new(width, height, Channels::Gray, samples).unwrap()
}

pub fn random_image(
    rng: &mut ChaCha8Rng,
    width: u32,
    height: u32,
    channels: Channels,
) -> RasterImage {
    let n = (width * height) as usize * channels.count();
    let samples = (0..n).map(|_| rng.gen()).collect();
    RasterImage::new(width, height, channels, samples).unwrap()
}

/// Smooth horizontal ramp plus a slow vertical wave per channel, with
/// Gaussian noise of the given standard deviation on top.
pub fn photographic(
    width: u32,
    height: u32,
    channels: Channels,
    noise: f64,
    seed: u64,
) -> RasterImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, noise).unwrap();
    let mut samples = Vec::with_capacity((width * height) as usize * channels.count());
    for y in 0..height {
        for x in 0..width {
            for c in 0..channels.count() {
                let base = 40.0
                    + 150.0 * (x as f64 / width as f64)
                    + 40.0 * (y as f64 / 23.0 + c as f64).sin();
                let v = base + normal.sample(&mut rng);
                samples.push(v.round().clamp(0.0, 255.0) as u8);
            }
        }
    }
    RasterImage::new(width, height, channels, samples).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
