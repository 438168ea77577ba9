//! Loading and saving 8-bit PNG and binary PGM/PPM images.
//!
//! Stored levels `n` map to `(n + 0.5) / 256` on load and back with
//! `floor(256 v)` on save. Gray files load as one plane and RGB files as three;
//! a gray PNG or PGM saved from a one-plane image stays gray.

use std::fs;
use std::io::Cursor;
use std::path::{Path, PathBuf};

use lrgb_core::RasterImage;
use thiserror::Error;

/// Image IO failures.
#[derive(Debug, Error)]
pub enum IoError {
    /// Filesystem error.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// Valid file in a variant this tool does not handle.
    #[error("unsupported image: {0}")]
    Unsupported(String),
    /// Broken header or truncated data.
    #[error("malformed image: {0}")]
    Malformed(String),
    /// PNG codec error.
    #[error("png: {0}")]
    Png(String),
    /// Raster validation error.
    #[error(transparent)]
    Core(#[from] lrgb_core::Error),
}

/// Container formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// PNG, 8-bit gray or RGB.
    Png,
    /// Binary PGM (`P5`).
    Pgm,
    /// Binary PPM (`P6`).
    Ppm,
}

impl Format {
    /// Picks the format from a file extension (`png`, `pgm`, `ppm`, `pnm`).
    /// `pnm` resolves to PGM or PPM from the plane count at save time.
    pub fn from_path(path: &Path, channels: usize) -> Result<Self, IoError> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .unwrap_or_default();
        match ext.as_str() {
            "png" => Ok(Format::Png),
            "pgm" => Ok(Format::Pgm),
            "ppm" => Ok(Format::Ppm),
            "pnm" if channels == 1 => Ok(Format::Pgm),
            "pnm" => Ok(Format::Ppm),
            _ => Err(IoError::Unsupported(format!(
                "cannot infer an image format from {}",
                path.display()
            ))),
        }
    }
}

/// Reads an image file; the format is detected from its content.
pub fn load_image(path: impl AsRef<Path>) -> Result<RasterImage, IoError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| IoError::Io {
        path: path.to_owned(),
        source,
    })?;
    decode(&bytes)
}

/// Writes an image; the format follows the file extension.
pub fn save_image(img: &RasterImage, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    let bytes = encode(img, Format::from_path(path, img.channels())?)?;
    fs::write(path, bytes).map_err(|source| IoError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Decodes PNG or binary PNM bytes.
pub fn decode(bytes: &[u8]) -> Result<RasterImage, IoError> {
    if bytes.starts_with(b"\x89PNG\r\n\x1a\n") {
        decode_png(bytes)
    } else if bytes.starts_with(b"P5") || bytes.starts_with(b"P6") {
        decode_pnm(bytes)
    } else if bytes.len() >= 2 && bytes[0] == b'P' && bytes[1].is_ascii_digit() {
        Err(IoError::Unsupported(format!(
            "PNM variant P{} (only binary P5/P6 are read)",
            bytes[1] as char
        )))
    } else {
        Err(IoError::Unsupported("not a PNG, PGM or PPM file".into()))
    }
}

/// Encodes an image in the given format.
pub fn encode(img: &RasterImage, format: Format) -> Result<Vec<u8>, IoError> {
    match format {
        Format::Png => encode_png(img),
        Format::Pgm | Format::Ppm => {
            let expected = if format == Format::Pgm { 1 } else { 3 };
            if img.channels() != expected {
                return Err(IoError::Unsupported(format!(
                    "a {}-plane image cannot be written as {}",
                    img.channels(),
                    if expected == 1 { "PGM" } else { "PPM" }
                )));
            }
            Ok(encode_pnm(img))
        }
    }
}

fn decode_png(bytes: &[u8]) -> Result<RasterImage, IoError> {
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    // palette and sub-byte gray expand to 8 bits; 16-bit data is kept and rejected below
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(|e| IoError::Png(e.to_string()))?;
    let (color, depth) = reader.output_color_type();
    if depth != png::BitDepth::Eight {
        return Err(IoError::Unsupported(format!(
            "{depth:?}-bit PNG (only 8-bit is supported)"
        )));
    }
    let channels = match color {
        png::ColorType::Grayscale => 1,
        png::ColorType::Rgb => 3,
        other => {
            return Err(IoError::Unsupported(format!(
                "PNG color type {other:?} (alpha is not supported)"
            )));
        }
    };
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| IoError::Malformed("PNG dimensions overflow".into()))?;
    let mut buf = vec![0; size];
    let info = reader.next_frame(&mut buf).map_err(|e| IoError::Png(e.to_string()))?;
    let (w, h) = (info.width as usize, info.height as usize);
    let mut samples = Vec::with_capacity(w * h * channels);
    for line in buf.chunks(info.line_size).take(h) {
        samples.extend_from_slice(&line[..w * channels]);
    }
    Ok(RasterImage::from_bytes(w, h, channels, &samples)?)
}

fn encode_png(img: &RasterImage) -> Result<Vec<u8>, IoError> {
    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, img.width() as u32, img.height() as u32);
        encoder.set_color(if img.is_mono() {
            png::ColorType::Grayscale
        } else {
            png::ColorType::Rgb
        });
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header().map_err(|e| IoError::Png(e.to_string()))?;
        writer
            .write_image_data(&img.to_bytes())
            .map_err(|e| IoError::Png(e.to_string()))?;
        writer.finish().map_err(|e| IoError::Png(e.to_string()))?;
    }
    Ok(out)
}

struct Header<'a> {
    rest: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space(&mut self) {
        while self.pos < self.rest.len() {
            match self.rest[self.pos] {
                b'#' => {
                    while self.pos < self.rest.len() && self.rest[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, IoError> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.rest.len() && self.rest[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.rest[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| IoError::Malformed(format!("PNM header: bad {what}")))
    }
}

fn decode_pnm(bytes: &[u8]) -> Result<RasterImage, IoError> {
    let channels = if bytes[1] == b'5' { 1 } else { 3 };
    let mut header = Header { rest: bytes, pos: 2 };
    let width = header.number("width")?;
    let height = header.number("height")?;
    let maxval = header.number("maxval")?;
    if maxval != 255 {
        return Err(IoError::Unsupported(format!(
            "PNM maxval {maxval} (only 255 is supported)"
        )));
    }
    match bytes.get(header.pos) {
        Some(c) if c.is_ascii_whitespace() => header.pos += 1,
        _ => return Err(IoError::Malformed("PNM header: missing separator after maxval".into())),
    }
    let len = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| IoError::Malformed("PNM dimensions overflow".into()))?;
    let data = bytes
        .get(header.pos..header.pos + len)
        .ok_or_else(|| IoError::Malformed(format!("PNM raster truncated: expected {len} bytes")))?;
    Ok(RasterImage::from_bytes(width, height, channels, data)?)
}

fn encode_pnm(img: &RasterImage) -> Vec<u8> {
    let magic = if img.is_mono() { "P5" } else { "P6" };
    let mut out = format!("{magic}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(&img.to_bytes());
    out
}
