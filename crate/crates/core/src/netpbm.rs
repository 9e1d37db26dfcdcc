//! Binary PGM (`P5`) and PPM (`P6`) with maxval 255.

use crate::error::{Error, Result};
use crate::image::{Channels, RasterImage};

fn parse_err(field: &'static str, reason: impl Into<String>) -> Error {
    Error::Netpbm {
        field,
        reason: reason.into(),
    }
}

struct HeaderCursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl HeaderCursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, field: &'static str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.data.get(self.pos) {
                None => parse_err(field, "missing"),
                Some(&b) => parse_err(field, format!("unexpected byte {b:#04x}")),
            });
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| parse_err(field, "value too large"))
    }
}

/// Parses a binary netpbm image. Bytes past the declared payload are ignored.
pub fn read_netpbm(data: &[u8]) -> Result<RasterImage> {
    let channels = match data.get(..2) {
        Some(b"P5") => Channels::Gray,
        Some(b"P6") => Channels::Rgb,
        _ => return Err(parse_err("magic", "expected P5 or P6")),
    };
    let mut cur = HeaderCursor { data, pos: 2 };
    if !cur
        .data
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(parse_err("magic", "expected P5 or P6"));
    }
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(parse_err(
            if width == 0 { "width" } else { "height" },
            "must be at least 1",
        ));
    }
    if maxval != 255 {
        return Err(parse_err(
            "maxval",
            format!("{maxval} is unsupported, only 255"),
        ));
    }
    match data.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(parse_err("maxval", "missing whitespace before payload")),
    }
    let len = (width as usize)
        .checked_mul(height as usize)
        .and_then(|n| n.checked_mul(channels.count()))
        .ok_or_else(|| parse_err("width", "image too large"))?;
    let payload = &data[cur.pos..];
    if payload.len() < len {
        return Err(parse_err(
            "payload",
            format!(
                "short payload: {} bytes, header declares {len}",
                payload.len()
            ),
        ));
    }
    RasterImage::new(width, height, channels, payload[..len].to_vec())
}

/// Canonical binary form: `P5`/`P6`, single spaces, one newline per header line.
pub fn write_netpbm(img: &RasterImage) -> Vec<u8> {
    let magic = match img.channels() {
        Channels::Gray => "P5",
        Channels::Rgb => "P6",
    };
    let header = format!("{magic}\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.byte_len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.samples());
    out
}
