//! JSON metrics documents written by `lrgb enhance --metrics` and `lrgb stats`.
//!
//! Documents are rendered through [`serde_json::Value`], whose maps are
//! ordered, so keys always come out sorted. The layout is versioned by
//! [`SCHEMA_VERSION`] and described in the README.

use lrgb_core::enhance::{image_stats, WindowOutcome};
use lrgb_core::{EnhanceConfig, Enhancement, RasterImage, WindowId, WindowStats};
use serde::Serialize;

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Whole-image logarithmic statistics. For color images `phi_mean` and
/// `phi_variance` describe the luminosity.
#[derive(Debug, Clone, Serialize)]
pub struct ImageSummary {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub mu: f64,
    pub phi_mean: f64,
    pub phi_variance: f64,
    pub gamma_phi: Option<f64>,
}

impl ImageSummary {
    pub fn of(img: &RasterImage) -> lrgb_core::Result<Self> {
        let st = image_stats(img)?;
        Ok(Self {
            width: img.width(),
            height: img.height(),
            channels: img.channels(),
            mu: st.mu_phi.get(),
            phi_mean: st.mu_phi.phi(),
            phi_variance: st.sigma_phi_sq,
            gamma_phi: st.gamma_phi(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    /// `fuzzy` or `crisp`.
    pub kind: &'static str,
    pub windows_x: usize,
    pub windows_y: usize,
    pub m: usize,
    pub n: usize,
    pub gamma: f64,
}

impl PartitionReport {
    pub fn new(kind: &'static str, cfg: &EnhanceConfig) -> Self {
        Self {
            kind,
            windows_x: cfg.windows_x,
            windows_y: cfg.windows_y,
            m: cfg.windows_x - 1,
            n: cfg.windows_y - 1,
            gamma: cfg.gamma,
        }
    }
}

/// Statistics of one window.
#[derive(Debug, Clone, Serialize)]
pub struct WindowStatsReport {
    pub i: usize,
    pub j: usize,
    pub card: f64,
    pub mu: f64,
    pub phi_mean: f64,
    pub sigma_phi_sq: f64,
    pub gamma_phi_sq: Option<f64>,
}

impl WindowStatsReport {
    pub fn new(id: WindowId, st: &WindowStats) -> Self {
        Self {
            i: id.i,
            j: id.j,
            card: st.card,
            mu: st.mu_phi.get(),
            phi_mean: st.mu_phi.phi(),
            sigma_phi_sq: st.sigma_phi_sq,
            gamma_phi_sq: st.gamma_phi_sq,
        }
    }
}

/// Statistics and derived transform of one window.
#[derive(Debug, Clone, Serialize)]
pub struct WindowReport {
    #[serde(flatten)]
    pub stats: WindowStatsReport,
    pub lambda: f64,
    pub tau: f64,
    pub omega: f64,
    pub lambda_capped: bool,
    pub omega_capped: bool,
}

impl From<&WindowOutcome> for WindowReport {
    fn from(w: &WindowOutcome) -> Self {
        Self {
            stats: WindowStatsReport::new(w.id, &w.stats),
            lambda: w.params.lambda,
            tau: w.params.tau.get(),
            omega: w.params.omega,
            lambda_capped: w.params.lambda_capped,
            omega_capped: w.params.omega_capped,
        }
    }
}

/// Report of one `enhance` run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub mode: String,
    pub partition: Option<PartitionReport>,
    pub windows: Vec<WindowReport>,
    pub caps_engaged: bool,
    pub input: ImageSummary,
    pub output: ImageSummary,
    pub elapsed_ms: f64,
}

impl RunReport {
    pub fn new(
        cfg: &EnhanceConfig,
        input: &RasterImage,
        result: &Enhancement,
        elapsed_ms: f64,
    ) -> lrgb_core::Result<Self> {
        let partition = match cfg.mode {
            lrgb_core::Mode::FuzzyMono | lrgb_core::Mode::FuzzyColor => Some(PartitionReport::new("fuzzy", cfg)),
            lrgb_core::Mode::CrispColor => Some(PartitionReport::new("crisp", cfg)),
            _ => None,
        };
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            mode: cfg.mode.name().to_owned(),
            partition,
            windows: result.windows.iter().map(WindowReport::from).collect(),
            caps_engaged: result.capped(),
            input: ImageSummary::of(input)?,
            output: ImageSummary::of(&result.image)?,
            elapsed_ms,
        })
    }
}

/// Report of a `stats` run.
#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub schema_version: u32,
    pub input: ImageSummary,
    pub partition: PartitionReport,
    pub windows: Vec<WindowStatsReport>,
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> serde_json::Result<String> {
    let value = serde_json::to_value(doc)?;
    let mut s = serde_json::to_string_pretty(&value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lrgb_core::{Mode, RgbPixel};

    #[test]
    fn keys_are_sorted_and_versioned() {
        let img = RasterImage::from_fn_rgb(6, 6, |c, r| {
            RgbPixel::new(0.2 + 0.1 * c as f64, 0.3, 0.2 + 0.1 * r as f64)
        })
        .unwrap();
        let cfg = EnhanceConfig::with_mode(Mode::FuzzyColor);
        let out = lrgb_core::enhance::enhance(&img, &cfg).unwrap();
        let json = to_json(&RunReport::new(&cfg, &img, &out, 1.5).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["windows"].as_array().unwrap().len(), 9);
        assert_eq!(v["partition"]["m"], 2);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let top_level = json
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim())
            .collect::<Vec<_>>();
        assert!(top_level.windows(2).all(|p| p[0] < p[1]), "{top_level:?}");
    }
}
