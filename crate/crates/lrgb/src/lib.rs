//! File formats, metrics reports and the command line front end for
//! [`lrgb_core`].

pub mod cli;
pub mod imageio;
pub mod report;

pub use imageio::{load_image, save_image, IoError};
