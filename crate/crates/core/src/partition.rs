//! Fuzzy partitions of a rectangular image support.
//!
//! A partition with degrees `(m, n)` has `(m + 1) x (n + 1)` windows. Window
//! `(i, j)` is built on the tensor Bernstein polynomial
//!
//! ```text
//! p_ij(x, y) = C(m, i) t^i (1 - t)^(m - i) * C(n, j) u^j (1 - u)^(n - j)
//! ```
//!
//! with `t`, `u` the normalized coordinates, and its membership degree is
//! `w_ij = p_ij^gamma / sum_kl p_kl^gamma`. Because `p_ij` is a product of one
//! factor per axis, so are `p_ij^gamma` and the normalizing sum; the membership
//! field is therefore stored as two axis tables and multiplied on demand.
//!
//! Pixel `(col, row)` is evaluated at its center,
//! `x = x0 + (col + 0.5) (x1 - x0) / width`.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// The rectangle `[x0, x1] x [y0, y1]` carrying the image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportRect {
    /// Left edge.
    pub x0: f64,
    /// Right edge.
    pub x1: f64,
    /// Top edge.
    pub y0: f64,
    /// Bottom edge.
    pub y1: f64,
}

impl SupportRect {
    /// Validates a non-degenerate rectangle.
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        // written this way round so NaN fails too
        if !(x0 < x1 && y0 < y1) || !(x1 - x0).is_finite() || !(y1 - y0).is_finite() {
            return Err(Error::InvalidArgument(
                "support rectangle must satisfy x0 < x1 and y0 < y1",
            ));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    /// `[0, width] x [0, height]`.
    pub fn for_image(width: usize, height: usize) -> Self {
        Self {
            x0: 0.0,
            x1: width.max(1) as f64,
            y0: 0.0,
            y1: height.max(1) as f64,
        }
    }

    /// Whether `(x, y)` lies in the closed rectangle.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }

    /// Center of pixel `(col, row)` on a `width x height` grid over this support.
    pub fn pixel_center(&self, col: usize, row: usize, width: usize, height: usize) -> (f64, f64) {
        (
            self.x0 + (col as f64 + 0.5) * (self.x1 - self.x0) / width as f64,
            self.y0 + (row as f64 + 0.5) * (self.y1 - self.y0) / height as f64,
        )
    }

    fn normalized(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x0) / (self.x1 - self.x0), (y - self.y0) / (self.y1 - self.y0))
    }
}

/// Index of a window: `i` along x (columns), `j` along y (rows).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowId {
    /// Horizontal index in `0..=m`.
    pub i: usize,
    /// Vertical index in `0..=n`.
    pub j: usize,
}

impl WindowId {
    /// Shorthand constructor.
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

/// Bernstein partition parameters: degrees `(m, n)`, tuning exponent `gamma`
/// and the support rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyPartition {
    m: usize,
    n: usize,
    gamma: f64,
    support: SupportRect,
}

impl FuzzyPartition {
    /// A partition with polynomial degrees `m` (x) and `n` (y).
    pub fn new(m: usize, n: usize, gamma: f64, support: SupportRect) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidArgument("gamma must be a positive finite number"));
        }
        Ok(Self { m, n, gamma, support })
    }

    /// A partition described by its window grid: `cols x rows` windows means
    /// degrees `m = cols - 1`, `n = rows - 1`.
    pub fn with_windows(cols: usize, rows: usize, gamma: f64, support: SupportRect) -> Result<Self> {
        if cols == 0 || rows == 0 {
            return Err(Error::InvalidArgument("window counts must be at least 1"));
        }
        Self::new(cols - 1, rows - 1, gamma, support)
    }

    /// Degree along x.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Degree along y.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Tuning exponent.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Support rectangle.
    pub fn support(&self) -> SupportRect {
        self.support
    }

    /// Number of window columns, `m + 1`.
    pub fn cols(&self) -> usize {
        self.m + 1
    }

    /// Number of window rows, `n + 1`.
    pub fn rows(&self) -> usize {
        self.n + 1
    }

    /// All windows, row-major (`j` outer, `i` inner).
    pub fn windows(&self) -> impl Iterator<Item = WindowId> {
        let cols = self.cols();
        (0..self.rows()).flat_map(move |j| (0..cols).map(move |i| WindowId { i, j }))
    }

    /// Fails unless `id` is inside the window grid.
    pub fn check(&self, id: WindowId) -> Result<()> {
        check_window(id, self.cols(), self.rows())
    }
}

fn check_window(id: WindowId, cols: usize, rows: usize) -> Result<()> {
    if id.i < cols && id.j < rows {
        Ok(())
    } else {
        Err(Error::WindowOutOfBounds {
            i: id.i,
            j: id.j,
            cols,
            rows,
        })
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0;
    for s in 0..k {
        c = c * (n - s) as f64 / (s + 1) as f64;
    }
    c
}

/// One-dimensional Bernstein basis value `C(deg, k) t^k (1 - t)^(deg - k)`.
fn bernstein_1d(deg: usize, k: usize, t: f64) -> f64 {
    binomial(deg, k) * libm::pow(t, k as f64) * libm::pow(1.0 - t, (deg - k) as f64)
}

/// Normalized `gamma` powers of the degree-`deg` basis at `t`, written to `out`.
///
/// The powers are taken relative to the largest basis value, which keeps
/// `exp(gamma * ln(b / b_max))` away from underflow for large `gamma`.
fn axis_memberships(deg: usize, t: f64, gamma: f64, out: &mut [f64]) {
    debug_assert_eq!(out.len(), deg + 1);
    let mut max = 0.0f64;
    for (k, o) in out.iter_mut().enumerate() {
        *o = bernstein_1d(deg, k, t);
        max = max.max(*o);
    }
    let ln_max = libm::log(max);
    let mut total = 0.0;
    for o in out.iter_mut() {
        *o = if *o > 0.0 {
            libm::exp(gamma * (libm::log(*o) - ln_max))
        } else {
            0.0
        };
        total += *o;
    }
    for o in out.iter_mut() {
        *o /= total;
    }
}

/// Tensor Bernstein weight `p_ij(x, y)`.
pub fn bernstein_weight(id: WindowId, x: f64, y: f64, part: &FuzzyPartition) -> Result<f64> {
    part.check(id)?;
    if !part.support.contains(x, y) {
        return Err(Error::OutsideSupport { x, y });
    }
    let (t, u) = part.support.normalized(x, y);
    Ok(bernstein_1d(part.m, id.i, t) * bernstein_1d(part.n, id.j, u))
}

/// Membership degree `w_ij(x, y) = p_ij^gamma / sum_kl p_kl^gamma`.
pub fn membership(id: WindowId, x: f64, y: f64, part: &FuzzyPartition) -> Result<f64> {
    part.check(id)?;
    if !part.support.contains(x, y) {
        return Err(Error::OutsideSupport { x, y });
    }
    let (t, u) = part.support.normalized(x, y);
    let mut wx = vec![0.0; part.cols()];
    let mut wy = vec![0.0; part.rows()];
    axis_memberships(part.m, t, part.gamma, &mut wx);
    axis_memberships(part.n, u, part.gamma, &mut wy);
    Ok(wx[id.i] * wy[id.j])
}

/// Membership degrees of every window at every pixel of a `width x height`
/// grid, stored per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipField {
    width: usize,
    height: usize,
    cols: usize,
    rows: usize,
    // wx[i * width + col], wy[j * height + row]
    wx: Vec<f64>,
    wy: Vec<f64>,
}

impl MembershipField {
    /// Image width in pixels.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Image height in pixels.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of window columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of window rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// All windows, row-major.
    pub fn windows(&self) -> impl Iterator<Item = WindowId> {
        let cols = self.cols;
        (0..self.rows).flat_map(move |j| (0..cols).map(move |i| WindowId { i, j }))
    }

    /// Fails unless `id` is inside the window grid.
    pub fn check(&self, id: WindowId) -> Result<()> {
        check_window(id, self.cols, self.rows)
    }

    /// `w_ij` at pixel `(col, row)`. Panics on out-of-range indices.
    #[inline]
    pub fn weight(&self, id: WindowId, col: usize, row: usize) -> f64 {
        assert!(col < self.width && row < self.height);
        self.wx[id.i * self.width + col] * self.wy[id.j * self.height + row]
    }

    /// Writes the plane of window `id` (row-major) into `out`.
    pub fn fill_plane(&self, id: WindowId, out: &mut [f64]) -> Result<()> {
        self.check(id)?;
        if out.len() != self.width * self.height {
            return Err(Error::InvalidArgument("plane buffer has the wrong length"));
        }
        let wx = &self.wx[id.i * self.width..(id.i + 1) * self.width];
        let wy = &self.wy[id.j * self.height..(id.j + 1) * self.height];
        for (line, &y) in out.chunks_exact_mut(self.width).zip(wy) {
            for (o, &x) in line.iter_mut().zip(wx) {
                *o = x * y;
            }
        }
        Ok(())
    }

    /// The plane of window `id`, row-major.
    pub fn plane(&self, id: WindowId) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.width * self.height];
        self.fill_plane(id, &mut out)?;
        Ok(out)
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        Err(Error::InvalidArgument("image dimensions must be positive"))
    } else {
        Ok(())
    }
}

/// Evaluates the fuzzy memberships on the pixel centers of a `width x height`
/// grid spanning the partition support.
pub fn membership_field(part: &FuzzyPartition, width: usize, height: usize) -> Result<MembershipField> {
    check_dims(width, height)?;
    let axis = |deg: usize, len: usize| {
        let mut table = vec![0.0; (deg + 1) * len];
        let mut column = vec![0.0; deg + 1];
        for p in 0..len {
            let t = (p as f64 + 0.5) / len as f64;
            axis_memberships(deg, t, part.gamma, &mut column);
            for (k, &w) in column.iter().enumerate() {
                table[k * len + p] = w;
            }
        }
        table
    };
    Ok(MembershipField {
        width,
        height,
        cols: part.cols(),
        rows: part.rows(),
        wx: axis(part.m, width),
        wy: axis(part.n, height),
    })
}

/// Indicator planes of the equal tiling into `(m + 1) x (n + 1)` rectangles.
///
/// Pixel centers in `[k / (m + 1), (k + 1) / (m + 1))` of the normalized axis
/// belong to tile `k`; these are exactly the regions where the `k`-th Bernstein
/// polynomial dominates, so this is also the `gamma -> infinity` limit of
/// [`membership_field`].
pub fn crisp_membership(part: &FuzzyPartition, width: usize, height: usize) -> Result<MembershipField> {
    check_dims(width, height)?;
    let axis = |tiles: usize, len: usize| {
        let mut table = vec![0.0; tiles * len];
        for p in 0..len {
            table[tile_of(p, len, tiles) * len + p] = 1.0;
        }
        table
    };
    Ok(MembershipField {
        width,
        height,
        cols: part.cols(),
        rows: part.rows(),
        wx: axis(part.cols(), width),
        wy: axis(part.rows(), height),
    })
}

/// Tile holding pixel `p` of `len` when the axis is cut into `tiles` equal parts.
pub fn tile_of(p: usize, len: usize, tiles: usize) -> usize {
    ((2 * p + 1) * tiles / (2 * len)).min(tiles - 1)
}

/// Fuzzy cardinality `card(W_ij) = sum over pixels of w_ij`.
pub fn fuzzy_cardinality(id: WindowId, field: &MembershipField) -> Result<f64> {
    field.check(id)?;
    // the sum of a product of axis tables factorizes
    let wx = &field.wx[id.i * field.width..(id.i + 1) * field.width];
    let wy = &field.wy[id.j * field.height..(id.j + 1) * field.height];
    let sx = crate::sum::tree_sum(wx.len(), &|k| wx[k]);
    let sy = crate::sum::tree_sum(wy.len(), &|k| wy[k]);
    Ok(sx * sy)
}
