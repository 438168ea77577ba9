//! Weighted logarithmic statistics.
//!
//! With membership weights `w` and cardinality `card = sum w`:
//!
//! ```text
//! mean      mu    = <+>_k (w_k / card) <x> f_k     phi(mu) = sum w phi(f) / card
//! variance  s^2   = sum w ||f <-> mu||^2 / card   = sum w (phi(f) - phi(mu))^2 / card
//! sat.      g^2   = sum w s_phi^2(r, g, b) / card
//! ```
//!
//! All-ones weights give the global statistics. Sums use the fixed pairwise
//! tree of [`crate::sum`], so results do not depend on anything but the input.

use crate::color::saturation_log_sq;
use crate::logcalc::UnitValue;
use crate::sum::tree_sum;
use crate::{Error, Result};

/// Windows with a smaller fuzzy cardinality are rejected.
pub const MIN_CARDINALITY: f64 = 1e-9;

/// Statistics of a uniformly distributed intensity on `[0, 1]`, the target of
/// every enhancement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetStats {
    /// Target mean, `0.5`.
    pub mu: f64,
    /// Target standard deviation, `sqrt(1/12)`.
    pub sigma: f64,
}

impl TargetStats {
    /// Mean `1/2` and variance `1/12`.
    pub const UNIFORM: Self = Self {
        mu: 0.5,
        sigma: 0.288_675_134_594_812_87,
    };
}

impl Default for TargetStats {
    fn default() -> Self {
        Self::UNIFORM
    }
}

/// Fuzzy moments of one window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowStats {
    /// Logarithmic mean.
    pub mu_phi: UnitValue,
    /// Logarithmic variance (of the luminosity for color images).
    pub sigma_phi_sq: f64,
    /// Mean saturation energy; `None` for monochrome statistics.
    pub gamma_phi_sq: Option<f64>,
    /// Fuzzy cardinality.
    pub card: f64,
}

fn check_card(card: f64) -> Result<()> {
    if card.is_nan() || card < MIN_CARDINALITY {
        return Err(Error::DegenerateWindow(card));
    }
    Ok(())
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::InvalidArgument("weights and planes differ in length"));
    }
    Ok(())
}

/// Weighted logarithmic mean.
pub fn log_mean(plane: &[UnitValue], weights: &[f64], card: f64) -> Result<UnitValue> {
    check_len(plane.len(), weights.len())?;
    check_card(card)?;
    let s = tree_sum(plane.len(), &|k| weights[k] * plane[k].phi());
    Ok(UnitValue::from_phi(s / card))
}

/// Weighted logarithmic variance around `mu`.
pub fn log_variance(plane: &[UnitValue], mu: UnitValue, weights: &[f64], card: f64) -> Result<f64> {
    check_len(plane.len(), weights.len())?;
    check_card(card)?;
    let m = mu.phi();
    let s = tree_sum(plane.len(), &|k| {
        let d = plane[k].phi() - m;
        weights[k] * d * d
    });
    Ok(s / card)
}

/// Weighted mean of the squared logarithmic saturation of chroma planes.
pub fn log_saturation_energy(
    r: &[UnitValue],
    g: &[UnitValue],
    b: &[UnitValue],
    weights: &[f64],
    card: f64,
) -> Result<f64> {
    check_len(r.len(), weights.len())?;
    check_len(g.len(), weights.len())?;
    check_len(b.len(), weights.len())?;
    check_card(card)?;
    let s = tree_sum(r.len(), &|k| {
        weights[k] * saturation_log_sq(r[k].phi(), g[k].phi(), b[k].phi())
    });
    Ok(s / card)
}

/// `sum w`, with the same summation tree as the moments.
pub fn cardinality(weights: &[f64]) -> f64 {
    tree_sum(weights.len(), &|k| weights[k])
}

impl WindowStats {
    /// Mean and variance of a plane under `weights`.
    pub fn mono(plane: &[UnitValue], weights: &[f64]) -> Result<Self> {
        let card = cardinality(weights);
        let mu_phi = log_mean(plane, weights, card)?;
        Ok(Self {
            mu_phi,
            sigma_phi_sq: log_variance(plane, mu_phi, weights, card)?,
            gamma_phi_sq: None,
            card,
        })
    }

    /// Luminosity mean and variance plus saturation energy of lrgb planes.
    pub fn color(l: &[UnitValue], r: &[UnitValue], g: &[UnitValue], b: &[UnitValue], weights: &[f64]) -> Result<Self> {
        let mut st = Self::mono(l, weights)?;
        st.gamma_phi_sq = Some(log_saturation_energy(r, g, b, weights, st.card)?);
        Ok(st)
    }

    /// Unweighted statistics of a whole plane.
    pub fn global_mono(plane: &[UnitValue]) -> Result<Self> {
        Self::mono(plane, &alloc::vec![1.0; plane.len()])
    }

    /// Unweighted statistics of whole lrgb planes.
    pub fn global_color(l: &[UnitValue], r: &[UnitValue], g: &[UnitValue], b: &[UnitValue]) -> Result<Self> {
        Self::color(l, r, g, b, &alloc::vec![1.0; l.len()])
    }

    /// `sqrt(sigma_phi_sq)`.
    pub fn sigma_phi(&self) -> f64 {
        libm::sqrt(self.sigma_phi_sq)
    }

    /// `sqrt(gamma_phi_sq)`, if present.
    pub fn gamma_phi(&self) -> Option<f64> {
        self.gamma_phi_sq.map(libm::sqrt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{rgb_to_lrgb_log, RgbPixel};
    use crate::logcalc::{log_smul, log_sub};
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }
    fn plane(vs: &[f64]) -> Vec<UnitValue> {
        vs.iter().map(|&v| UnitValue::new(v)).collect()
    }

    #[test]
    fn target_constants() {
        assert_eq!(TargetStats::UNIFORM.sigma, libm::sqrt(1.0 / 12.0));
        assert_eq!(TargetStats::default().mu, 0.5);
    }

    #[test]
    fn mean_examples() {
        let c = plane(&[0.3; 5]);
        let st = WindowStats::global_mono(&c).unwrap();
        assert!(close(st.mu_phi.get(), 0.3, 1e-15));
        assert!(st.sigma_phi_sq.abs() < 1e-30);
        assert_eq!(st.card, 5.0);

        let st = WindowStats::global_mono(&plane(&[0.6, 0.4])).unwrap();
        assert!(close(st.mu_phi.get(), 0.5, 1e-15));
        assert!(close(st.sigma_phi_sq, 0.010275122118323, 1e-12));

        let mu = log_mean(&plane(&[0.6, 0.7]), &[1.0, 1.0], 2.0).unwrap();
        assert!(close(mu.phi(), 0.156595371061921, 1e-12));
        assert!(close(mu.get(), 0.651668522645212, 1e-12));
    }

    #[test]
    fn concentrated_weights_have_no_variance() {
        let p = plane(&[0.2, 0.7, 0.9]);
        let w = [0.0, 2.5, 0.0];
        let st = WindowStats::mono(&p, &w).unwrap();
        assert!(close(st.mu_phi.get(), 0.7, 1e-15));
        assert!(close(st.sigma_phi_sq, 0.0, 1e-30));
    }

    #[test]
    fn saturation_energy_examples() {
        let g = plane(&[0.5; 4]);
        assert_eq!(log_saturation_energy(&g, &g, &g, &[1.0; 4], 4.0).unwrap(), 0.0);

        let q = rgb_to_lrgb_log(RgbPixel::new(0.6, 0.5, 0.5));
        let e = log_saturation_energy(&[q.r], &[q.g], &[q.b], &[1.0], 1.0).unwrap();
        assert!(close(e, 0.002283360470738, 1e-12));

        let r = plane(&[0.6, 0.3, 0.55]);
        let gg = plane(&[0.45, 0.6, 0.5]);
        let b = plane(&[0.5, 0.6, 0.45]);
        let w = [0.2, 0.5, 0.3];
        let w2: Vec<f64> = w.iter().map(|x| 2.0 * x).collect();
        let a = log_saturation_energy(&r, &gg, &b, &w, 1.0).unwrap();
        let d = log_saturation_energy(&r, &gg, &b, &w2, 2.0).unwrap();
        assert!(close(a, d, 1e-15));
    }

    #[test]
    fn degenerate_windows_error() {
        let p = plane(&[0.2, 0.3]);
        assert!(matches!(
            log_mean(&p, &[0.0, 0.0], 0.0),
            Err(Error::DegenerateWindow(_))
        ));
        assert!(log_variance(&p, UnitValue::new(0.5), &[1e-12, 0.0], 1e-12).is_err());
        assert!(log_mean(&p, &[1.0], 1.0).is_err());
        assert!(WindowStats::mono(&p, &[0.0, 0.0]).is_err());
    }

    // Chained rational operations, no phi shortcut.
    fn rational_mean(vs: &[f64], ws: &[f64]) -> f64 {
        let card: f64 = ws.iter().sum();
        let mut acc = 0.5;
        for (&v, &w) in vs.iter().zip(ws) {
            let k = w / card;
            let p = v.powf(k);
            let t = p / (p + (1.0 - v).powf(k));
            acc = acc * t / ((1.0 - acc) * (1.0 - t) + acc * t);
        }
        acc
    }

    proptest! {
        #[test]
        fn weighted_mean_matches_chained_rational(
            vs in proptest::collection::vec(0.01f64..0.99, 1..16),
            seed in proptest::collection::vec(0.05f64..1.0, 16),
        ) {
            let ws = &seed[..vs.len()];
            let card = cardinality(ws);
            let mu = log_mean(&plane(&vs), ws, card).unwrap();
            prop_assert!(close(mu.get(), rational_mean(&vs, ws), 1e-9));
        }

        #[test]
        fn mean_is_convex(vs in proptest::collection::vec(0.01f64..0.99, 1..40)) {
            let p = plane(&vs);
            let st = WindowStats::global_mono(&p).unwrap();
            let lo = p.iter().map(|u| u.phi()).fold(f64::INFINITY, f64::min);
            let hi = p.iter().map(|u| u.phi()).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(st.mu_phi.phi() >= lo - 1e-15 && st.mu_phi.phi() <= hi + 1e-15);
            prop_assert!(st.sigma_phi_sq >= 0.0);
        }

        #[test]
        fn affine_response(vs in proptest::collection::vec(0.01f64..0.99, 2..40), l in 0.1f64..5.0) {
            let p = plane(&vs);
            let st = WindowStats::global_mono(&p).unwrap();
            let out: Vec<UnitValue> = p.iter().map(|&f| log_smul(l, log_sub(f, st.mu_phi))).collect();
            let st2 = WindowStats::global_mono(&out).unwrap();
            prop_assert!(close(st2.mu_phi.get(), 0.5, 1e-9));
            prop_assert!(close(st2.sigma_phi_sq, l * l * st.sigma_phi_sq, 1e-9));
        }

        #[test]
        fn all_ones_weights_are_global(vs in proptest::collection::vec(0.01f64..0.99, 1..40)) {
            let p = plane(&vs);
            let a = WindowStats::global_mono(&p).unwrap();
            let b = WindowStats::mono(&p, &vec![1.0; p.len()]).unwrap();
            prop_assert_eq!(a, b);
            let n = p.len() as f64;
            let mean = p.iter().map(|u| u.phi()).sum::<f64>() / n;
            let var = p.iter().map(|u| (u.phi() - mean).powi(2)).sum::<f64>() / n;
            prop_assert!(close(a.mu_phi.phi(), mean, 1e-12));
            prop_assert!(close(a.sigma_phi_sq, var, 1e-12));
        }
    }
}
