//! Planar images over a rectangular support and 8-bit storage mapping.

use alloc::vec::Vec;

use crate::color::RgbPixel;
use crate::logcalc::UnitValue;
use crate::partition::SupportRect;
use crate::{Error, Result};

/// A monochrome (1 plane) or RGB (3 planes) image of [`UnitValue`]s, planes in
/// row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    planes: Vec<Vec<UnitValue>>,
}

impl RasterImage {
    /// Validates plane count and sizes.
    pub fn new(width: usize, height: usize, planes: Vec<Vec<UnitValue>>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument("image dimensions must be positive"));
        }
        if planes.len() != 1 && planes.len() != 3 {
            return Err(Error::InvalidArgument("an image has 1 or 3 planes"));
        }
        if planes.iter().any(|p| p.len() != width * height) {
            return Err(Error::InvalidArgument("plane size does not match width x height"));
        }
        Ok(Self { width, height, planes })
    }

    /// A single-plane image.
    pub fn mono(width: usize, height: usize, plane: Vec<UnitValue>) -> Result<Self> {
        Self::new(width, height, alloc::vec![plane])
    }

    /// A three-plane image.
    pub fn rgb(
        width: usize,
        height: usize,
        red: Vec<UnitValue>,
        green: Vec<UnitValue>,
        blue: Vec<UnitValue>,
    ) -> Result<Self> {
        Self::new(width, height, alloc::vec![red, green, blue])
    }

    /// Builds a monochrome image from raw intensities `f(col, row)`.
    pub fn from_fn_mono<F>(width: usize, height: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> f64,
    {
        let plane = (0..height)
            .flat_map(|row| (0..width).map(move |col| (col, row)))
            .map(|(col, row)| UnitValue::new(f(col, row)))
            .collect();
        Self::mono(width, height, plane)
    }

    /// Builds a color image from pixels `f(col, row)`.
    pub fn from_fn_rgb<F>(width: usize, height: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> RgbPixel,
    {
        let n = width * height;
        let (mut r, mut g, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        for row in 0..height {
            for col in 0..width {
                let p = f(col, row);
                r.push(p.red);
                g.push(p.green);
                b.push(p.blue);
            }
        }
        Self::rgb(width, height, r, g, b)
    }

    /// Width in pixels.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Height in pixels.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Pixel count.
    pub fn len(&self) -> usize {
        self.width * self.height
    }

    /// Always false; images have positive dimensions.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of planes (1 or 3).
    pub fn channels(&self) -> usize {
        self.planes.len()
    }

    /// Whether the image has a single plane.
    pub fn is_mono(&self) -> bool {
        self.planes.len() == 1
    }

    /// Plane `k`.
    pub fn plane(&self, k: usize) -> &[UnitValue] {
        &self.planes[k]
    }

    /// All planes.
    pub fn planes(&self) -> &[Vec<UnitValue>] {
        &self.planes
    }

    /// Consumes the image and returns its planes.
    pub fn into_planes(self) -> Vec<Vec<UnitValue>> {
        self.planes
    }

    /// Color pixel at `(col, row)`; a mono image reports its gray value on all
    /// three channels.
    pub fn pixel(&self, col: usize, row: usize) -> RgbPixel {
        let k = row * self.width + col;
        let c = |p: usize| self.planes[p.min(self.planes.len() - 1)][k];
        RgbPixel {
            red: c(0),
            green: c(1),
            blue: c(2),
        }
    }

    /// `[0, width] x [0, height]`.
    pub fn support(&self) -> SupportRect {
        SupportRect::for_image(self.width, self.height)
    }

    /// Decodes interleaved 8-bit samples (`channels` per pixel).
    pub fn from_bytes(width: usize, height: usize, channels: usize, bytes: &[u8]) -> Result<Self> {
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidArgument("an image has 1 or 3 planes"));
        }
        if bytes.len() != width * height * channels {
            return Err(Error::InvalidArgument("sample buffer does not match the image size"));
        }
        let table: Vec<UnitValue> = (0..=255u32).map(|n| dequantize(n).unwrap_or_default()).collect();
        let planes = (0..channels)
            .map(|c| {
                bytes
                    .iter()
                    .skip(c)
                    .step_by(channels)
                    .map(|&s| table[usize::from(s)])
                    .collect()
            })
            .collect();
        Self::new(width, height, planes)
    }

    /// Encodes to interleaved 8-bit samples.
    pub fn to_bytes(&self) -> Vec<u8> {
        let channels = self.planes.len();
        let mut out = Vec::with_capacity(self.len() * channels);
        for k in 0..self.len() {
            for p in &self.planes {
                out.push(quantize(p[k]));
            }
        }
        out
    }
}

/// Maps a stored level `0..=255` to the interior value `(n + 0.5) / 256`.
pub fn dequantize(n: u32) -> Result<UnitValue> {
    if n > 255 {
        return Err(Error::InvalidArgument("8-bit level must be in 0..=255"));
    }
    Ok(UnitValue::new((f64::from(n) + 0.5) / 256.0))
}

/// `floor(256 v)` clamped to `0..=255`.
pub fn quantize(v: UnitValue) -> u8 {
    let level = libm::floor(256.0 * v.get());
    level.clamp(0.0, 255.0) as u8
}
