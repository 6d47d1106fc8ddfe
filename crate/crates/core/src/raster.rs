//! RGB raster images and the PPM (P3/P6, maxval 255) codec.

use crate::error::{Error, Result};

pub type Rgb = [u8; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    pixels: Vec<Rgb>,
}

impl RasterImage {
    pub fn new(width: usize, height: usize, pixels: Vec<Rgb>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::LengthMismatch {
                left: pixels.len(),
                right: width * height,
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, color: Rgb) -> Self {
        Self {
            width,
            height,
            pixels: vec![color; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Row-major pixel data.
    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    pub fn set_pixel(&mut self, x: usize, y: usize, color: Rgb) {
        self.pixels[y * self.width + x] = color;
    }

    pub fn distinct_colors(&self) -> usize {
        let mut colors: Vec<Rgb> = self.pixels.clone();
        colors.sort_unstable();
        colors.dedup();
        colors.len()
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(if start >= self.bytes.len() {
                Error::ppm(start, format!("unexpected end of data reading {what}"))
            } else {
                Error::ppm(start, format!("expected decimal {what}"))
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::ppm(start, format!("{what} out of range")))
    }
}

/// Decodes a P3 or P6 image. Only maxval 255 is accepted.
pub fn read_ppm(bytes: &[u8]) -> Result<RasterImage> {
    if bytes.len() < 2 || bytes[0] != b'P' || !matches!(bytes[1], b'3' | b'6') {
        return Err(Error::ppm(0, "missing P3/P6 magic"));
    }
    let binary = bytes[1] == b'6';
    let mut cur = Cursor { bytes, pos: 2 };
    if cur.pos < bytes.len() && !bytes[cur.pos].is_ascii_whitespace() && bytes[cur.pos] != b'#' {
        return Err(Error::ppm(cur.pos, "magic must be followed by whitespace"));
    }
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval_at = {
        cur.skip_whitespace_and_comments();
        cur.pos
    };
    let maxval = cur.number("maxval")?;
    if maxval != 255 {
        return Err(Error::ppm(maxval_at, format!("maxval {maxval} unsupported, need 255")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::ppm(0, "image dimensions overflow"))?;
    let mut pixels = Vec::with_capacity(count.min(1 << 24));

    if binary {
        // exactly one whitespace byte separates the header from the raster
        if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() {
            return Err(Error::ppm(cur.pos, "missing whitespace after maxval"));
        }
        let start = cur.pos + 1;
        let needed = count * 3;
        if bytes.len() - start < needed {
            return Err(Error::ppm(
                bytes.len(),
                format!("truncated raster: need {needed} bytes, have {}", bytes.len() - start),
            ));
        }
        pixels.extend(
            bytes[start..start + needed]
                .chunks_exact(3)
                .map(|c| [c[0], c[1], c[2]]),
        );
    } else {
        for i in 0..count {
            let mut px = [0u8; 3];
            for channel in &mut px {
                cur.skip_whitespace_and_comments();
                let at = cur.pos;
                if at >= bytes.len() {
                    return Err(Error::ppm(
                        at,
                        format!("truncated raster: {i} of {count} pixels present"),
                    ));
                }
                let v = cur.number("sample")?;
                if v > 255 {
                    return Err(Error::ppm(at, format!("sample {v} exceeds maxval")));
                }
                *channel = v as u8;
            }
            pixels.push(px);
        }
    }
    RasterImage::new(width, height, pixels)
}

/// Encodes as P6 when `binary`, else P3 with one image row per line.
pub fn write_ppm(img: &RasterImage, binary: bool) -> Vec<u8> {
    let header = format!(
        "{}\n{} {}\n255\n",
        if binary { "P6" } else { "P3" },
        img.width,
        img.height
    );
    let mut out = header.into_bytes();
    if binary {
        out.reserve(img.pixels.len() * 3);
        for px in &img.pixels {
            out.extend_from_slice(px);
        }
    } else {
        for row in img.pixels.chunks(img.width.max(1)) {
            let line: Vec<String> = row
                .iter()
                .map(|p| format!("{} {} {}", p[0], p[1], p[2]))
                .collect();
            out.extend_from_slice(line.join(" ").as_bytes());
            out.push(b'\n');
        }
    }
    out
}
