//! Affine enhancement in logarithmic arithmetic.
//!
//! A monochrome transform is `psi(f) = lambda <x> (f <+> tau)`: `tau` shifts
//! brightness, `lambda` rescales contrast. Color images use the lrgb
//! coordinates and a third gain `omega` on the chroma only:
//!
//! ```text
//! R' = lambda <x> (l <+> tau) <+> omega <x> r     (and likewise G', B')
//! ```
//!
//! Parameters are picked so the result has the statistics of a uniform
//! distribution: `tau = <-> mu(l)`, `lambda = sigma(u) / sigma(l)`,
//! `omega = sigma(u) / gamma(r, g, b)`. The windowed pipelines compute one
//! parameter set per window of a partition and merge the per-window results
//! with the memberships as weights, `f' = sum_ij w_ij <x> psi_ij(f)`.
//!
//! Everything runs in phi-space, where each of these maps is affine.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::color::{rgb_to_lrgb_log, LrgbLog, RgbPixel};
use crate::logcalc::{log_add, log_neg, log_smul, UnitValue};
use crate::partition::{crisp_membership, membership_field, FuzzyPartition, MembershipField, WindowId};
use crate::raster::{dequantize, quantize, RasterImage};
use crate::stats::{TargetStats, WindowStats};
use crate::{Error, Result};

/// Which pipeline to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Whole-image `(lambda, tau)` on a single plane.
    GlobalMono,
    /// Whole-image `(lambda, tau)` from the luminosity, applied to each channel.
    GlobalColor2,
    /// Whole-image `(lambda, tau, omega)` on the lrgb decomposition.
    GlobalColor3,
    /// Per-window `(lambda, tau)` over a fuzzy partition, merged.
    FuzzyMono,
    /// Per-window `(lambda, tau, omega)` over a fuzzy partition, merged.
    FuzzyColor,
    /// As [`Mode::FuzzyColor`] with crisp rectangular tiles.
    CrispColor,
    /// Histogram equalization baseline.
    HistEq,
}

impl Mode {
    /// Every mode, in declaration order.
    pub const ALL: [Mode; 7] = [
        Mode::GlobalMono,
        Mode::GlobalColor2,
        Mode::GlobalColor3,
        Mode::FuzzyMono,
        Mode::FuzzyColor,
        Mode::CrispColor,
        Mode::HistEq,
    ];

    /// Command line name (`fuzzy-color`, ...).
    pub fn name(self) -> &'static str {
        match self {
            Mode::GlobalMono => "global-mono",
            Mode::GlobalColor2 => "global-color2",
            Mode::GlobalColor3 => "global-color3",
            Mode::FuzzyMono => "fuzzy-mono",
            Mode::FuzzyColor => "fuzzy-color",
            Mode::CrispColor => "crisp-color",
            Mode::HistEq => "histeq",
        }
    }

    /// Whether the pipeline needs a single-plane input.
    pub fn is_mono(self) -> bool {
        matches!(self, Mode::GlobalMono | Mode::FuzzyMono)
    }

    /// Whether the pipeline uses the window grid.
    pub fn is_windowed(self) -> bool {
        matches!(self, Mode::FuzzyMono | Mode::FuzzyColor | Mode::CrispColor)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or(Error::InvalidArgument("unknown enhancement mode"))
    }
}

/// Pipeline configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnhanceConfig {
    /// Pipeline.
    pub mode: Mode,
    /// Window columns (`m + 1`).
    pub windows_x: usize,
    /// Window rows (`n + 1`).
    pub windows_y: usize,
    /// Partition tuning exponent.
    pub gamma: f64,
    /// Upper bound on `lambda` and `omega`.
    pub gain_cap: f64,
    /// Lower bound applied to `sigma_phi` and `gamma_phi` before dividing.
    pub variance_floor: f64,
    /// Target statistics.
    pub target: TargetStats,
}

impl Default for EnhanceConfig {
    fn default() -> Self {
        Self {
            mode: Mode::FuzzyColor,
            windows_x: 3,
            windows_y: 3,
            gamma: 1.0,
            gain_cap: 10.0,
            variance_floor: 1e-8,
            target: TargetStats::UNIFORM,
        }
    }
}

impl EnhanceConfig {
    /// Default configuration for `mode`.
    pub fn with_mode(mode: Mode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    /// Checks every numeric parameter.
    pub fn validate(&self) -> Result<()> {
        if self.windows_x == 0 || self.windows_y == 0 {
            return Err(Error::InvalidArgument("window counts must be at least 1"));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidArgument("gamma must be a positive finite number"));
        }
        if !(self.gain_cap > 0.0 && self.gain_cap.is_finite()) {
            return Err(Error::InvalidArgument("gain cap must be a positive finite number"));
        }
        if !(self.variance_floor > 0.0 && self.variance_floor.is_finite()) {
            return Err(Error::InvalidArgument(
                "variance floor must be a positive finite number",
            ));
        }
        Ok(())
    }

    /// The fuzzy partition described by this configuration over `img`.
    pub fn partition(&self, img: &RasterImage) -> Result<FuzzyPartition> {
        FuzzyPartition::with_windows(self.windows_x, self.windows_y, self.gamma, img.support())
    }
}

/// Transform parameters of one window (or of the whole image).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineParams {
    /// Luminosity gain.
    pub lambda: f64,
    /// Logarithmic offset.
    pub tau: UnitValue,
    /// Chroma gain; `1` for monochrome transforms.
    pub omega: f64,
    /// `lambda` was limited by the gain cap.
    pub lambda_capped: bool,
    /// `omega` was limited by the gain cap.
    pub omega_capped: bool,
}

impl AffineParams {
    /// Parameters leaving every image unchanged.
    pub const IDENTITY: Self = Self {
        lambda: 1.0,
        tau: crate::logcalc::THETA,
        omega: 1.0,
        lambda_capped: false,
        omega_capped: false,
    };

    /// Uncapped parameters.
    pub fn new(lambda: f64, tau: UnitValue, omega: f64) -> Self {
        Self {
            lambda,
            tau,
            omega,
            lambda_capped: false,
            omega_capped: false,
        }
    }

    /// Whether either gain hit the cap.
    pub fn capped(&self) -> bool {
        self.lambda_capped || self.omega_capped
    }
}

fn guarded_gain(target: f64, measured: f64, cfg: &EnhanceConfig) -> (f64, bool) {
    let gain = target / measured.max(cfg.variance_floor);
    if gain > cfg.gain_cap {
        (cfg.gain_cap, true)
    } else {
        (gain, false)
    }
}

/// `lambda = sigma(u) / sigma_phi`, `tau = <-> mu_phi`.
pub fn derive_params_mono(st: &WindowStats, target: &TargetStats, cfg: &EnhanceConfig) -> AffineParams {
    let (lambda, lambda_capped) = guarded_gain(target.sigma, st.sigma_phi(), cfg);
    AffineParams {
        lambda,
        tau: log_neg(st.mu_phi),
        omega: 1.0,
        lambda_capped,
        omega_capped: false,
    }
}

/// As [`derive_params_mono`] plus `omega = sigma(u) / gamma_phi`. Statistics
/// without a saturation energy count as achromatic.
pub fn derive_params_color(st: &WindowStats, target: &TargetStats, cfg: &EnhanceConfig) -> AffineParams {
    let mut par = derive_params_mono(st, target, cfg);
    let (omega, omega_capped) = guarded_gain(target.sigma, st.gamma_phi().unwrap_or(0.0), cfg);
    par.omega = omega;
    par.omega_capped = omega_capped;
    par
}

/// `lambda <x> (f <+> tau)`.
#[inline]
pub fn affine_mono(f: UnitValue, p: &AffineParams) -> UnitValue {
    log_smul(p.lambda, log_add(f, p.tau))
}

/// The monochrome transform applied to each channel.
pub fn affine_color2(p: RgbPixel, par: &AffineParams) -> RgbPixel {
    RgbPixel {
        red: affine_mono(p.red, par),
        green: affine_mono(p.green, par),
        blue: affine_mono(p.blue, par),
    }
}

/// `R' = lambda <x> (l <+> tau) <+> omega <x> r`, cyclically for `G'`, `B'`.
pub fn affine_color3(q: LrgbLog, par: &AffineParams) -> RgbPixel {
    let l = affine_mono(q.l, par);
    RgbPixel {
        red: log_add(l, log_smul(par.omega, q.r)),
        green: log_add(l, log_smul(par.omega, q.g)),
        blue: log_add(l, log_smul(par.omega, q.b)),
    }
}

/// Per-window statistics and parameters of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowOutcome {
    /// Window (`(0, 0)` for global pipelines).
    pub id: WindowId,
    /// Statistics the parameters were derived from.
    pub stats: WindowStats,
    /// Derived parameters.
    pub params: AffineParams,
}

/// Output of a pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct Enhancement {
    /// Enhanced image.
    pub image: RasterImage,
    /// One entry per window; empty for histogram equalization.
    pub windows: Vec<WindowOutcome>,
}

impl Enhancement {
    /// Whether any window engaged a gain cap.
    pub fn capped(&self) -> bool {
        self.windows.iter().any(|w| w.params.capped())
    }
}

/// The lrgb planes `[l, r, g, b]` of a color image.
pub fn lrgb_planes(img: &RasterImage) -> Result<[Vec<UnitValue>; 4]> {
    require_color(img)?;
    let n = img.len();
    let mut out = [
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    ];
    let (r, g, b) = (img.plane(0), img.plane(1), img.plane(2));
    for k in 0..n {
        let q = rgb_to_lrgb_log(RgbPixel {
            red: r[k],
            green: g[k],
            blue: b[k],
        });
        out[0].push(q.l);
        out[1].push(q.r);
        out[2].push(q.g);
        out[3].push(q.b);
    }
    Ok(out)
}

/// Global statistics of an image: of its plane when monochrome, of its
/// luminosity and chroma when color.
pub fn image_stats(img: &RasterImage) -> Result<WindowStats> {
    if img.is_mono() {
        WindowStats::global_mono(img.plane(0))
    } else {
        let [l, r, g, b] = lrgb_planes(img)?;
        WindowStats::global_color(&l, &r, &g, &b)
    }
}

/// Statistics of every window of `field` over `img` (lrgb statistics for
/// color images).
pub fn window_stats(img: &RasterImage, field: &MembershipField) -> Result<Vec<(WindowId, WindowStats)>> {
    check_field(img, field)?;
    let lrgb = if img.is_mono() { None } else { Some(lrgb_planes(img)?) };
    let mut w = vec![0.0; img.len()];
    let mut out = Vec::with_capacity(field.cols() * field.rows());
    for id in field.windows() {
        field.fill_plane(id, &mut w)?;
        let st = match &lrgb {
            None => WindowStats::mono(img.plane(0), &w)?,
            Some([l, r, g, b]) => WindowStats::color(l, r, g, b, &w)?,
        };
        out.push((id, st));
    }
    Ok(out)
}

fn require_mono(img: &RasterImage) -> Result<()> {
    if img.is_mono() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("pipeline needs a single-plane image"))
    }
}

fn require_color(img: &RasterImage) -> Result<()> {
    if img.channels() == 3 {
        Ok(())
    } else {
        Err(Error::InvalidArgument("pipeline needs a three-plane image"))
    }
}

fn from_phi_plane(phi: Vec<f64>) -> Vec<UnitValue> {
    phi.into_iter().map(UnitValue::from_phi).collect()
}

/// Runs the pipeline selected by `cfg.mode`.
pub fn enhance(img: &RasterImage, cfg: &EnhanceConfig) -> Result<Enhancement> {
    cfg.validate()?;
    match cfg.mode {
        Mode::GlobalMono => enhance_global_mono(img, cfg),
        Mode::GlobalColor2 => enhance_global_color2(img, cfg),
        Mode::GlobalColor3 => enhance_global_color3(img, cfg),
        Mode::FuzzyMono => enhance_fuzzy_mono(img, &cfg.partition(img)?, cfg),
        Mode::FuzzyColor => enhance_fuzzy_color(img, &cfg.partition(img)?, cfg),
        Mode::CrispColor => enhance_crisp_color(img, cfg),
        Mode::HistEq => Ok(Enhancement {
            image: hist_equalize(img),
            windows: Vec::new(),
        }),
    }
}

/// Whole-image `psi(f) = sigma(u)/sigma_phi(f) <x> (f <-> mu_phi(f))`.
pub fn enhance_global_mono(img: &RasterImage, cfg: &EnhanceConfig) -> Result<Enhancement> {
    require_mono(img)?;
    let st = WindowStats::global_mono(img.plane(0))?;
    let params = derive_params_mono(&st, &cfg.target, cfg);
    let plane = img.plane(0).iter().map(|&f| affine_mono(f, &params)).collect();
    Ok(Enhancement {
        image: RasterImage::mono(img.width(), img.height(), plane)?,
        windows: vec![WindowOutcome {
            id: WindowId::new(0, 0),
            stats: st,
            params,
        }],
    })
}

/// Two-parameter color transform: `(lambda, tau)` from the luminosity, the
/// same map on every channel.
pub fn enhance_global_color2(img: &RasterImage, cfg: &EnhanceConfig) -> Result<Enhancement> {
    let [l, ..] = lrgb_planes(img)?;
    let st = WindowStats::global_mono(&l)?;
    let params = derive_params_mono(&st, &cfg.target, cfg);
    let planes = img
        .planes()
        .iter()
        .map(|p| p.iter().map(|&c| affine_mono(c, &params)).collect())
        .collect();
    Ok(Enhancement {
        image: RasterImage::new(img.width(), img.height(), planes)?,
        windows: vec![WindowOutcome {
            id: WindowId::new(0, 0),
            stats: st,
            params,
        }],
    })
}

/// Three-parameter color transform with global `(lambda, tau, omega)`.
pub fn enhance_global_color3(img: &RasterImage, cfg: &EnhanceConfig) -> Result<Enhancement> {
    let [l, r, g, b] = lrgb_planes(img)?;
    let st = WindowStats::global_color(&l, &r, &g, &b)?;
    let params = derive_params_color(&st, &cfg.target, cfg);
    let n = img.len();
    let (mut pr, mut pg, mut pb) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for k in 0..n {
        let p = affine_color3(
            LrgbLog {
                l: l[k],
                r: r[k],
                g: g[k],
                b: b[k],
            },
            &params,
        );
        pr.push(p.red);
        pg.push(p.green);
        pb.push(p.blue);
    }
    Ok(Enhancement {
        image: RasterImage::rgb(img.width(), img.height(), pr, pg, pb)?,
        windows: vec![WindowOutcome {
            id: WindowId::new(0, 0),
            stats: st,
            params,
        }],
    })
}

/// Fuzzy-windowed monochrome enhancement.
pub fn enhance_fuzzy_mono(img: &RasterImage, part: &FuzzyPartition, cfg: &EnhanceConfig) -> Result<Enhancement> {
    require_mono(img)?;
    let field = membership_field(part, img.width(), img.height())?;
    enhance_windowed_mono(img, &field, cfg)
}

/// Fuzzy-windowed color enhancement.
pub fn enhance_fuzzy_color(img: &RasterImage, part: &FuzzyPartition, cfg: &EnhanceConfig) -> Result<Enhancement> {
    require_color(img)?;
    let field = membership_field(part, img.width(), img.height())?;
    enhance_windowed_color(img, &field, cfg)
}

/// Color enhancement over a crisp `windows_x x windows_y` tiling.
pub fn enhance_crisp_color(img: &RasterImage, cfg: &EnhanceConfig) -> Result<Enhancement> {
    require_color(img)?;
    let field = crisp_membership(&cfg.partition(img)?, img.width(), img.height())?;
    enhance_windowed_color(img, &field, cfg)
}

/// Monochrome enhancement over an arbitrary membership field:
/// `phi(f') = sum_ij w_ij phi(psi_ij(f))`.
pub fn enhance_windowed_mono(img: &RasterImage, field: &MembershipField, cfg: &EnhanceConfig) -> Result<Enhancement> {
    require_mono(img)?;
    check_field(img, field)?;
    let f = img.plane(0);
    let n = img.len();
    let mut acc = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut windows = Vec::with_capacity(field.cols() * field.rows());
    for id in field.windows() {
        field.fill_plane(id, &mut w)?;
        let stats = WindowStats::mono(f, &w)?;
        let params = derive_params_mono(&stats, &cfg.target, cfg);
        let (lambda, tau) = (params.lambda, params.tau.phi());
        for k in 0..n {
            acc[k] += w[k] * (lambda * (f[k].phi() + tau));
        }
        windows.push(WindowOutcome { id, stats, params });
    }
    Ok(Enhancement {
        image: RasterImage::mono(img.width(), img.height(), from_phi_plane(acc))?,
        windows,
    })
}

/// Three-parameter color enhancement over an arbitrary membership field.
pub fn enhance_windowed_color(img: &RasterImage, field: &MembershipField, cfg: &EnhanceConfig) -> Result<Enhancement> {
    check_field(img, field)?;
    let [l, r, g, b] = lrgb_planes(img)?;
    let n = img.len();
    // sum_ij w (lambda (l + tau) + omega c) = lum + (sum_ij w omega) c for
    // each chroma plane c, so the merge keeps two accumulators
    let mut lum = vec![0.0; n];
    let mut chroma_gain = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut windows = Vec::with_capacity(field.cols() * field.rows());
    for id in field.windows() {
        field.fill_plane(id, &mut w)?;
        let stats = WindowStats::color(&l, &r, &g, &b, &w)?;
        let params = derive_params_color(&stats, &cfg.target, cfg);
        let (lambda, tau, omega) = (params.lambda, params.tau.phi(), params.omega);
        for k in 0..n {
            lum[k] += w[k] * (lambda * (l[k].phi() + tau));
            chroma_gain[k] += w[k] * omega;
        }
        windows.push(WindowOutcome { id, stats, params });
    }
    let channel = |c: &[UnitValue]| -> Vec<UnitValue> {
        (0..n)
            .map(|k| UnitValue::from_phi(lum[k] + chroma_gain[k] * c[k].phi()))
            .collect()
    };
    let (pr, pg, pb) = (channel(&r), channel(&g), channel(&b));
    Ok(Enhancement {
        image: RasterImage::rgb(img.width(), img.height(), pr, pg, pb)?,
        windows,
    })
}

fn check_field(img: &RasterImage, field: &MembershipField) -> Result<()> {
    if field.width() != img.width() || field.height() != img.height() {
        return Err(Error::InvalidArgument("membership field does not match the image size"));
    }
    Ok(())
}

/// The equalization lookup table of one 8-bit plane:
/// `level k -> round(255 cdf(k) / N)`.
pub fn equalization_map(levels: &[u8]) -> [u8; 256] {
    let mut hist = [0usize; 256];
    for &v in levels {
        hist[usize::from(v)] += 1;
    }
    let total = levels.len().max(1) as f64;
    let mut map = [0u8; 256];
    let mut cdf = 0usize;
    for (k, m) in map.iter_mut().enumerate() {
        cdf += hist[k];
        *m = libm::round(255.0 * cdf as f64 / total) as u8;
    }
    map
}

/// Histogram equalization of each plane on 8-bit quantized levels.
pub fn hist_equalize(img: &RasterImage) -> RasterImage {
    let table: Vec<UnitValue> = (0..=255u32).map(|n| dequantize(n).unwrap_or_default()).collect();
    let planes = img
        .planes()
        .iter()
        .map(|p| {
            let levels: Vec<u8> = p.iter().map(|&v| quantize(v)).collect();
            let map = equalization_map(&levels);
            levels
                .iter()
                .map(|&q| table[usize::from(map[usize::from(q)])])
                .collect()
        })
        .collect();
    RasterImage::new(img.width(), img.height(), planes).expect("same shape as the input")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::saturation_log;
    use crate::logcalc::log_sub;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }
    fn stats(mu: f64, sigma: f64, gamma: Option<f64>) -> WindowStats {
        WindowStats {
            mu_phi: UnitValue::new(mu),
            sigma_phi_sq: sigma * sigma,
            gamma_phi_sq: gamma.map(|g| g * g),
            card: 1.0,
        }
    }
    const S: f64 = TargetStats::UNIFORM.sigma;

    #[test]
    fn mode_names_round_trip() {
        for m in Mode::ALL {
            assert_eq!(m.name().parse::<Mode>().unwrap(), m);
        }
        assert!("fuzzy".parse::<Mode>().is_err());
    }

    #[test]
    fn config_validation() {
        let ok = EnhanceConfig::default();
        assert!(ok.validate().is_ok());
        assert!(EnhanceConfig { windows_x: 0, ..ok }.validate().is_err());
        assert!(EnhanceConfig { gamma: -1.0, ..ok }.validate().is_err());
        assert!(EnhanceConfig {
            gain_cap: f64::INFINITY,
            ..ok
        }
        .validate()
        .is_err());
        assert!(EnhanceConfig {
            variance_floor: 0.0,
            ..ok
        }
        .validate()
        .is_err());
    }

    #[test]
    fn mono_params() {
        let cfg = EnhanceConfig::default();
        let t = TargetStats::UNIFORM;
        let p = derive_params_mono(&stats(0.5, S, None), &t, &cfg);
        assert!(close(p.lambda, 1.0, 1e-15) && close(p.tau.get(), 0.5, 1e-15));
        assert!(!p.capped());

        let p = derive_params_mono(&stats(0.6, S / 2.0, None), &t, &cfg);
        assert!(close(p.lambda, 2.0, 1e-12));
        assert!(close(p.tau.get(), 0.4, 1e-12));

        let p = derive_params_mono(&stats(0.3, 0.0, None), &t, &cfg);
        assert_eq!(p.lambda, cfg.gain_cap);
        assert!(p.lambda_capped);
    }

    #[test]
    fn color_params() {
        let cfg = EnhanceConfig::default();
        let t = TargetStats::UNIFORM;
        let p = derive_params_color(&stats(0.5, S, Some(0.0)), &t, &cfg);
        assert_eq!(p.omega, cfg.gain_cap);
        assert!(p.omega_capped && !p.lambda_capped);
        let p = derive_params_color(&stats(0.5, S, Some(S)), &t, &cfg);
        assert!(close(p.omega, 1.0, 1e-15));
        let p = derive_params_color(&stats(0.5, S, Some(S / 3.0)), &t, &cfg);
        assert!(close(p.omega, 3.0, 1e-12));
        let p = derive_params_color(&stats(0.5, S, None), &t, &cfg);
        assert!(p.omega_capped);
    }

    #[test]
    fn affine_mono_examples() {
        let f = UnitValue::new(0.37);
        assert!(close(affine_mono(f, &AffineParams::IDENTITY).get(), 0.37, 1e-15));
        let p = AffineParams::new(2.0, UnitValue::new(0.5), 1.0);
        assert!(close(
            affine_mono(UnitValue::new(0.6), &p).get(),
            0.692307692307692,
            1e-12
        ));
        let mu = UnitValue::new(0.73);
        let p = AffineParams::new(4.2, log_neg(mu), 1.0);
        assert!(close(affine_mono(mu, &p).get(), 0.5, 1e-15));
        // tau = <-> mu turns the transform into lambda <x> (f <-> mu)
        let f = UnitValue::new(0.2);
        assert!(close(
            affine_mono(f, &p).phi(),
            log_smul(4.2, log_sub(f, mu)).phi(),
            1e-15
        ));
    }

    #[test]
    fn affine_color2_examples() {
        let p = RgbPixel::new(0.6, 0.5, 0.5);
        let q = affine_color2(p, &AffineParams::IDENTITY);
        assert!(close(q.red.get(), 0.6, 1e-15));
        let g = affine_color2(
            RgbPixel::new(0.3, 0.3, 0.3),
            &AffineParams::new(3.0, UnitValue::new(0.7), 1.0),
        );
        assert_eq!(g.red, g.green);
        assert_eq!(g.green, g.blue);
        let q = affine_color2(p, &AffineParams::new(2.0, UnitValue::new(0.5), 1.0));
        assert!(close(q.red.get(), 0.692307692307692, 1e-12));
        assert!(close(q.green.get(), 0.5, 1e-15) && close(q.blue.get(), 0.5, 1e-15));
    }

    #[test]
    fn affine_color3_examples() {
        let p = RgbPixel::new(0.64, 0.3, 0.41);
        let q = rgb_to_lrgb_log(p);
        let par = AffineParams::new(1.7, UnitValue::new(0.42), 1.7);
        let a = affine_color3(q, &par);
        let b = affine_color2(crate::color::lrgb_to_rgb_log(q), &par);
        for (x, y) in a.channels().iter().zip(b.channels()) {
            assert!(close(x.get(), y.get(), 1e-12));
        }

        let gray = rgb_to_lrgb_log(RgbPixel::new(0.2, 0.2, 0.2));
        let out = affine_color3(gray, &AffineParams::new(3.0, UnitValue::new(0.6), 9.0));
        assert!(close(out.red.get(), out.green.get(), 1e-15) && close(out.green.get(), out.blue.get(), 1e-15));

        let q = rgb_to_lrgb_log(RgbPixel::new(0.6, 0.5, 0.5));
        let out = rgb_to_lrgb_log(affine_color3(q, &AffineParams::new(1.0, UnitValue::new(0.5), 2.0)));
        let [r, g, b] = out.chroma_phi();
        assert!(close(r, 0.135155036036055, 1e-12));
        assert!(close(g, -0.067577518018027, 1e-12) && close(b, g, 1e-15));
        assert!(close(saturation_log(&out), 0.095569042492607, 1e-12));
        assert!(close(out.l.get(), q.l.get(), 1e-12));
    }

    fn ramp(w: usize, h: usize) -> RasterImage {
        RasterImage::from_fn_mono(w, h, |c, r| 0.1 + 0.8 * (c + r * w) as f64 / (w * h) as f64).unwrap()
    }

    #[test]
    fn global_mono_constant_image_caps() {
        let img = RasterImage::from_fn_mono(8, 8, |_, _| 0.3).unwrap();
        let out = enhance_global_mono(&img, &EnhanceConfig::with_mode(Mode::GlobalMono)).unwrap();
        assert!(out.capped());
        assert!(out.image.plane(0).iter().all(|v| close(v.get(), 0.5, 1e-12)));
    }

    #[test]
    fn global_mono_normalized_input_is_fixed() {
        let img = ramp(32, 32);
        let cfg = EnhanceConfig::with_mode(Mode::GlobalMono);
        let once = enhance_global_mono(&img, &cfg).unwrap().image;
        let twice = enhance_global_mono(&once, &cfg).unwrap().image;
        for (a, b) in once.plane(0).iter().zip(twice.plane(0)) {
            assert!(close(a.get(), b.get(), 1e-9));
        }
    }

    #[test]
    fn pipelines_check_plane_count() {
        let mono = ramp(4, 4);
        let cfg = EnhanceConfig::default();
        assert!(enhance_global_color3(&mono, &cfg).is_err());
        assert!(enhance_crisp_color(&mono, &cfg).is_err());
        let color = RasterImage::from_fn_rgb(4, 4, |c, r| {
            RgbPixel::new(0.2 + 0.1 * c as f64, 0.3, 0.1 + 0.1 * r as f64)
        })
        .unwrap();
        assert!(enhance_global_mono(&color, &cfg).is_err());
        let part = cfg.partition(&color).unwrap();
        assert!(enhance_fuzzy_mono(&color, &part, &cfg).is_err());
    }

    #[test]
    fn crisp_tile_without_pixels_is_degenerate() {
        let img = RasterImage::from_fn_rgb(2, 2, |c, _| RgbPixel::new(0.2 + 0.3 * c as f64, 0.4, 0.5)).unwrap();
        let cfg = EnhanceConfig::with_mode(Mode::CrispColor);
        assert!(matches!(
            enhance_crisp_color(&img, &cfg),
            Err(Error::DegenerateWindow(_))
        ));
    }

    #[test]
    fn equalization_examples() {
        let uniform: Vec<u8> = (0..=255u8).collect();
        let map = equalization_map(&uniform);
        for (k, &to) in map.iter().enumerate() {
            assert!((i32::from(to) - k as i32).abs() <= 1);
        }
        let two: Vec<u8> = [40u8; 50].iter().chain([90u8; 50].iter()).copied().collect();
        let map = equalization_map(&two);
        assert_eq!(map[40], 128);
        assert_eq!(map[90], 255);
        for k in 1..256 {
            assert!(map[k] >= map[k - 1]);
        }
    }

    #[test]
    fn dispatch_runs_every_mode() {
        let color = RasterImage::from_fn_rgb(12, 9, |c, r| {
            RgbPixel::new(0.2 + 0.05 * c as f64, 0.3 + 0.02 * r as f64, 0.6 - 0.03 * c as f64)
        })
        .unwrap();
        let mono = ramp(12, 9);
        for mode in Mode::ALL {
            let img = if mode.is_mono() { &mono } else { &color };
            let out = enhance(img, &EnhanceConfig::with_mode(mode)).unwrap();
            assert_eq!(out.image.channels(), img.channels());
            let expected = if mode.is_windowed() {
                9
            } else if mode == Mode::HistEq {
                0
            } else {
                1
            };
            assert_eq!(out.windows.len(), expected, "{mode}");
        }
    }
}
