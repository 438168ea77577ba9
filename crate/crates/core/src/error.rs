use thiserror::Error;

/// Errors raised by the enhancement library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A raw intensity was NaN or infinite.
    #[error("intensity {0} is not a finite number")]
    NotFinite(f64),
    /// A classical lrgb triple recomposed to a channel outside `(0, 1)`.
    #[error("channel {channel} recomposes to {value}, outside (0, 1)")]
    OutOfRange {
        /// Channel name (`R`, `G` or `B`).
        channel: char,
        /// The offending value.
        value: f64,
    },
    /// A point was evaluated outside the partition support.
    #[error("point ({x}, {y}) lies outside the support rectangle")]
    OutsideSupport {
        /// Horizontal coordinate.
        x: f64,
        /// Vertical coordinate.
        y: f64,
    },
    /// Window index out of the `(m + 1) x (n + 1)` grid.
    #[error("window ({i}, {j}) is outside a {cols}x{rows} partition")]
    WindowOutOfBounds {
        /// Horizontal window index.
        i: usize,
        /// Vertical window index.
        j: usize,
        /// Number of window columns.
        cols: usize,
        /// Number of window rows.
        rows: usize,
    },
    /// A window with (near) zero fuzzy cardinality.
    #[error("degenerate window: cardinality {0} is below the minimum")]
    DegenerateWindow(f64),
    /// Invalid argument (bad dimension, parameter, plane count ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
