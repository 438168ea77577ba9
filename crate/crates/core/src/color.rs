//! RGB and the lrgb perceptual coordinates.
//!
//! `l` measures whiteness, `r`, `g`, `b` measure redness, greenness and
//! blueness. The classical variant uses real arithmetic and signed chroma; the
//! logarithmic variant keeps every component in `(0, 1)` with achromatic chroma
//! at `0.5`, and is evaluated in phi-space.

use crate::logcalc::{log_add, UnitValue};
use crate::{Error, Result};

/// A color pixel with channels in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RgbPixel {
    /// Red channel.
    pub red: UnitValue,
    /// Green channel.
    pub green: UnitValue,
    /// Blue channel.
    pub blue: UnitValue,
}

impl RgbPixel {
    /// Builds a pixel from raw intensities (clamped, see [`UnitValue::new`]).
    pub fn new(red: f64, green: f64, blue: f64) -> Self {
        Self {
            red: UnitValue::new(red),
            green: UnitValue::new(green),
            blue: UnitValue::new(blue),
        }
    }

    /// The channels as `[R, G, B]`.
    pub fn channels(self) -> [UnitValue; 3] {
        [self.red, self.green, self.blue]
    }
}

/// Classical lrgb coordinates. Chroma is signed and lies in `(-2/3, 2/3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LrgbClassic {
    /// Luminosity, the channel average.
    pub l: f64,
    /// Redness.
    pub r: f64,
    /// Greenness.
    pub g: f64,
    /// Blueness.
    pub b: f64,
}

/// Logarithmic lrgb coordinates. Chroma is neutral at `0.5` and satisfies
/// `phi(r) + phi(g) + phi(b) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LrgbLog {
    /// Luminosity.
    pub l: UnitValue,
    /// Redness.
    pub r: UnitValue,
    /// Greenness.
    pub g: UnitValue,
    /// Blueness.
    pub b: UnitValue,
}

impl LrgbLog {
    /// Chroma as a phi-space vector `(phi(r), phi(g), phi(b))`.
    pub fn chroma_phi(&self) -> [f64; 3] {
        [self.r.phi(), self.g.phi(), self.b.phi()]
    }
}

/// `l = (R+G+B)/3`, `r = (2R-G-B)/3`, `g = (2G-B-R)/3`, `b = (2B-R-G)/3`.
pub fn rgb_to_lrgb_classic(p: RgbPixel) -> LrgbClassic {
    let (red, green, blue) = (p.red.get(), p.green.get(), p.blue.get());
    LrgbClassic {
        l: (red + green + blue) / 3.0,
        r: (2.0 * red - green - blue) / 3.0,
        g: (2.0 * green - blue - red) / 3.0,
        b: (2.0 * blue - red - green) / 3.0,
    }
}

/// Inverse of [`rgb_to_lrgb_classic`]. Fails when a recomposed channel falls
/// outside `(0, 1)`; the caller decides whether to clamp.
pub fn lrgb_to_rgb_classic(q: LrgbClassic) -> Result<RgbPixel> {
    let channel = |name: char, value: f64| {
        if value > 0.0 && value < 1.0 {
            Ok(UnitValue::new(value))
        } else {
            Err(Error::OutOfRange { channel: name, value })
        }
    };
    Ok(RgbPixel {
        red: channel('R', q.l + (2.0 * q.r - q.g - q.b) / 3.0)?,
        green: channel('G', q.l + (2.0 * q.g - q.b - q.r) / 3.0)?,
        blue: channel('B', q.l + (2.0 * q.b - q.r - q.g) / 3.0)?,
    })
}

/// Classical saturation `s = sqrt((r^2 + g^2 + b^2) / 3)`.
pub fn saturation_classic(q: &LrgbClassic) -> f64 {
    libm::sqrt((q.r * q.r + q.g * q.g + q.b * q.b) / 3.0)
}

/// Logarithmic lrgb, `l = 1/3 <x> (R <+> G <+> B)`,
/// `r = 1/3 <x> (2 <x> R <-> G <-> B)` and cyclically for `g`, `b`.
pub fn rgb_to_lrgb_log(p: RgbPixel) -> LrgbLog {
    let [l, r, g, b] = lrgb_phi(p.red.phi(), p.green.phi(), p.blue.phi());
    LrgbLog {
        l: UnitValue::from_phi(l),
        r: UnitValue::from_phi(r),
        g: UnitValue::from_phi(g),
        b: UnitValue::from_phi(b),
    }
}

/// The same decomposition on phi coordinates: returns `[l, r, g, b]` in
/// phi-space.
#[inline]
pub fn lrgb_phi(red: f64, green: f64, blue: f64) -> [f64; 4] {
    [
        (red + green + blue) / 3.0,
        (2.0 * red - green - blue) / 3.0,
        (2.0 * green - blue - red) / 3.0,
        (2.0 * blue - red - green) / 3.0,
    ]
}

/// Inverse of [`rgb_to_lrgb_log`]: `R = l <+> r`, `G = l <+> g`, `B = l <+> b`.
pub fn lrgb_to_rgb_log(q: LrgbLog) -> RgbPixel {
    RgbPixel {
        red: log_add(q.l, q.r),
        green: log_add(q.l, q.g),
        blue: log_add(q.l, q.b),
    }
}

/// Logarithmic saturation `s = sqrt((phi(r)^2 + phi(g)^2 + phi(b)^2) / 3)`.
pub fn saturation_log(q: &LrgbLog) -> f64 {
    libm::sqrt(saturation_log_sq(q.r.phi(), q.g.phi(), q.b.phi()))
}

/// Squared logarithmic saturation from phi-space chroma.
#[inline]
pub fn saturation_log_sq(r: f64, g: f64, b: f64) -> f64 {
    (r * r + g * g + b * b) / 3.0
}
