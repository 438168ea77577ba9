//! Color and grayscale image enhancement with logarithmic arithmetic on the
//! open interval `(0, 1)`.
//!
//! The crate is `no_std` (it needs `alloc` for image planes). The pieces are:
//!
//! - [`logcalc`]: the bounded vector space on `(0, 1)`, its isomorphism `phi`
//!   onto the reals, the induced norm and modulus.
//! - [`color`]: RGB to lrgb (luminosity + chroma) conversions, classical and
//!   logarithmic, with both saturation measures.
//! - [`partition`]: Bernstein fuzzy partitions of the image support and the
//!   crisp tiling baseline.
//! - [`stats`]: weighted logarithmic mean, variance and saturation energy.
//! - [`enhance`]: affine enhancement pipelines (global, fuzzy-windowed and
//!   crisp-windowed) plus a histogram equalization baseline.
//! - [`raster`]: planar images of [`UnitValue`]s and 8-bit (de)quantization.
#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod color;
pub mod enhance;
mod error;
pub mod logcalc;
pub mod partition;
pub mod raster;
pub mod stats;
mod sum;

pub use color::{LrgbClassic, LrgbLog, RgbPixel};
pub use enhance::{AffineParams, EnhanceConfig, Enhancement, Mode, WindowOutcome};
pub use error::Error;
pub use logcalc::{PhiValue, UnitValue};
pub use partition::{FuzzyPartition, MembershipField, SupportRect, WindowId};
pub use raster::RasterImage;
pub use stats::{TargetStats, WindowStats};

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
