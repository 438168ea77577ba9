//! Logarithmic arithmetic on the bounded value set `V = (0, 1)`.
//!
//! `V` is a real vector space under
//!
//! ```text
//! a <+> b   = ab / ((1 - a)(1 - b) + ab)          neutral element 0.5
//! a <-> b   = a(1 - b) / (a(1 - b) + (1 - a)b)    opposite of v is 1 - v
//! k <x> a   = a^k / (a^k + (1 - a)^k)
//! ```
//!
//! and `phi(v) = ln(v / (1 - v)) / 4` is a vector space isomorphism onto the
//! reals. [`UnitValue`] stores its `phi` coordinate, so every operation here is
//! a single real operation followed by no rounding beyond that of `f64`. The
//! rational closed forms above are the second evaluation path and are checked
//! against this one in the tests.

use core::cmp::Ordering;

use crate::{Error, Result};

/// Smallest distance to the endpoints accepted from raw intensities (`2^-23`).
pub const EPSILON: f64 = 1.0 / 8_388_608.0;

/// The neutral element `0.5`.
pub const THETA: UnitValue = UnitValue { phi: 0.0 };

/// A coordinate in phi-space, the image of `V` under the isomorphism.
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct PhiValue(pub f64);

/// An intensity strictly inside `(0, 1)`.
///
/// Constructors taking a raw intensity clamp it to `[EPSILON, 1 - EPSILON]`.
/// Results of the logarithmic operations are not clamped; [`UnitValue::get`]
/// always returns a value strictly inside `(0, 1)` even when the exact result
/// is closer to an endpoint than `f64` can resolve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitValue {
    phi: f64,
}

impl UnitValue {
    /// Builds a value from a raw intensity, clamping it into
    /// `[EPSILON, 1 - EPSILON]`.
    ///
    /// Panics if `v` is NaN; use [`UnitValue::try_new`] for unchecked input.
    pub fn new(v: f64) -> Self {
        match Self::try_new(v) {
            Ok(u) => u,
            Err(e) => panic!("{e}"),
        }
    }

    /// Fallible variant of [`UnitValue::new`]; rejects NaN. Infinities clamp.
    pub fn try_new(v: f64) -> Result<Self> {
        if v.is_nan() {
            return Err(Error::NotFinite(v));
        }
        let v = v.clamp(EPSILON, 1.0 - EPSILON);
        Ok(Self {
            phi: 0.25 * libm::log(v / (1.0 - v)),
        })
    }

    /// Wraps a phi-space coordinate (the inverse isomorphism).
    #[inline]
    pub fn from_phi(t: f64) -> Self {
        debug_assert!(t.is_finite(), "phi coordinate must be finite");
        Self { phi: t }
    }

    /// The phi-space coordinate of this value.
    #[inline]
    pub fn phi(self) -> f64 {
        self.phi
    }

    /// The intensity as a real number in the open interval `(0, 1)`.
    pub fn get(self) -> f64 {
        let x = 4.0 * self.phi;
        let v = if x >= 0.0 {
            1.0 / (1.0 + libm::exp(-x))
        } else {
            let e = libm::exp(x);
            e / (1.0 + e)
        };
        // largest f64 below one
        v.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
    }
}

impl Default for UnitValue {
    fn default() -> Self {
        THETA
    }
}

impl PartialOrd for UnitValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        // phi is strictly increasing
        self.phi.partial_cmp(&other.phi)
    }
}

impl From<UnitValue> for f64 {
    fn from(u: UnitValue) -> f64 {
        u.get()
    }
}

/// Logarithmic addition `a <+> b`.
#[inline]
pub fn log_add(a: UnitValue, b: UnitValue) -> UnitValue {
    UnitValue::from_phi(a.phi + b.phi)
}

/// The opposite `1 - a`, so that `a <+> log_neg(a) = 0.5`.
#[inline]
pub fn log_neg(a: UnitValue) -> UnitValue {
    UnitValue::from_phi(-a.phi)
}

/// Logarithmic subtraction `a <-> b`.
#[inline]
pub fn log_sub(a: UnitValue, b: UnitValue) -> UnitValue {
    UnitValue::from_phi(a.phi - b.phi)
}

/// Scalar multiplication `lambda <x> a`. Negative scalars are allowed.
#[inline]
pub fn log_smul(lambda: f64, a: UnitValue) -> UnitValue {
    UnitValue::from_phi(lambda * a.phi)
}

/// The isomorphism `phi(a) = ln(a / (1 - a)) / 4`.
#[inline]
pub fn phi(a: UnitValue) -> PhiValue {
    PhiValue(a.phi)
}

/// Inverse isomorphism, `1 / (1 + exp(-4t))`.
#[inline]
pub fn phi_inv(t: PhiValue) -> UnitValue {
    UnitValue::from_phi(t.0)
}

/// Scalar product `phi(a) * phi(b)`.
#[inline]
pub fn inner(a: UnitValue, b: UnitValue) -> f64 {
    a.phi * b.phi
}

/// Norm `|phi(a)|`; zero only at the neutral element.
#[inline]
pub fn norm(a: UnitValue) -> f64 {
    a.phi.abs()
}

/// Modulus `0.5 + |a - 0.5|`, a value in `[0.5, 1)`.
#[inline]
pub fn modulus(a: UnitValue) -> UnitValue {
    // 0.5 + |v - 0.5| reflects the lower half onto the upper one, which is
    // |phi| in phi-space.
    UnitValue::from_phi(a.phi.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Rational closed forms, evaluated directly on reals.
    fn r_add(a: f64, b: f64) -> f64 {
        a * b / ((1.0 - a) * (1.0 - b) + a * b)
    }
    fn r_sub(a: f64, b: f64) -> f64 {
        a * (1.0 - b) / (a * (1.0 - b) + (1.0 - a) * b)
    }
    fn r_smul(l: f64, a: f64) -> f64 {
        let p = a.powf(l);
        p / (p + (1.0 - a).powf(l))
    }
    fn u(v: f64) -> UnitValue {
        UnitValue::new(v)
    }
    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn add_examples() {
        for v in [0.01, 0.37, 0.9] {
            assert!(close(log_add(THETA, u(v)).get(), v, 1e-15));
        }
        assert!(close(log_add(u(0.6), u(0.4)).get(), 0.5, 1e-15));
        let s = log_add(u(0.6), u(0.7));
        assert!(close(s.get(), 0.42 / 0.54, 1e-12));
        assert!(close(s.phi(), 0.25 * libm::log(3.5), 1e-12));
    }

    #[test]
    fn neg_examples() {
        assert!(close(log_neg(THETA).get(), 0.5, 0.0));
        assert!(close(log_neg(u(0.3)).get(), 0.7, 1e-15));
        assert!(close(log_add(u(0.8), log_neg(u(0.8))).get(), 0.5, 1e-15));
    }

    #[test]
    fn sub_examples() {
        for v in [0.2, 0.6, 0.95] {
            assert_eq!(log_sub(u(v), u(v)), THETA);
            assert!(close(log_sub(u(v), u(0.5)).get(), v, 1e-15));
        }
        assert!(close(log_sub(u(0.6), u(0.7)).get(), 0.18 / 0.46, 1e-12));
    }

    #[test]
    fn smul_examples() {
        assert!(close(log_smul(1.0, u(0.37)).get(), 0.37, 1e-15));
        assert_eq!(log_smul(0.0, u(0.9)), THETA);
        assert!(close(log_smul(2.0, u(0.6)).get(), 0.36 / 0.52, 1e-12));
        // negative scalars reflect through the neutral element
        assert!(close(log_smul(-1.0, u(0.3)).get(), 0.7, 1e-15));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(THETA).0, 0.0);
        assert!(close(phi(u(0.6)).0, 0.101366277027041, 1e-12));
        for v in [0.1, 0.25, 0.77] {
            assert!(close(phi(u(v)).0 + phi(u(1.0 - v)).0, 0.0, 1e-15));
        }
    }

    #[test]
    fn phi_inv_examples() {
        assert_eq!(phi_inv(PhiValue(0.0)).get(), 0.5);
        assert!(close(phi_inv(PhiValue(0.25)).get(), 0.731058578630005, 1e-12));
        assert!(close(phi_inv(phi(u(0.9))).get(), 0.9, 1e-15));
    }

    #[test]
    fn phi_inv_saturates_strictly_inside() {
        for t in [-1e6, -200.0, -10.0, 10.0, 200.0, 1e6] {
            let v = phi_inv(PhiValue(t)).get();
            assert!(v > 0.0 && v < 1.0, "t = {t} gave {v}");
        }
    }

    #[test]
    fn inner_and_norm_examples() {
        assert_eq!(inner(THETA, u(0.8)), 0.0);
        assert!(close(inner(u(0.6), u(0.6)), 0.010275122118323, 1e-12));
        assert_eq!(inner(u(0.2), u(0.7)), inner(u(0.7), u(0.2)));
        assert_eq!(norm(THETA), 0.0);
        assert!(close(norm(u(0.6)), 0.101366277027041, 1e-12));
        assert!(close(norm(log_add(u(0.6), u(0.7))), 0.313190742123842, 1e-12));
        assert!(close(
            norm(log_sub(u(0.2), u(0.7))),
            (phi(u(0.2)).0 - phi(u(0.7)).0).abs(),
            1e-15
        ));
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(modulus(THETA).get(), 0.5);
        assert!(close(modulus(u(0.7)).get(), 0.7, 1e-15));
        assert!(close(modulus(u(0.3)).get(), 0.7, 1e-15));
    }

    #[test]
    fn constructor_clamps_endpoints() {
        assert!(close(u(0.0).get(), EPSILON, 1e-20));
        assert!(close(u(1.0).get(), 1.0 - EPSILON, 1e-16));
        assert!(close(u(-3.0).get(), EPSILON, 1e-20));
        assert!(UnitValue::try_new(f64::NAN).is_err());
        assert!(close(
            UnitValue::try_new(f64::INFINITY).unwrap().get(),
            1.0 - EPSILON,
            1e-16
        ));
    }

    #[test]
    fn ordering_follows_intensity() {
        assert!(u(0.2) < u(0.3));
        assert!(u(0.9) > THETA);
    }

    proptest! {
        #[test]
        fn cross_path_add(a in 0.001f64..0.999, b in 0.001f64..0.999) {
            prop_assert!(close(log_add(u(a), u(b)).get(), r_add(a, b), 1e-12));
        }

        #[test]
        fn cross_path_sub(a in 0.001f64..0.999, b in 0.001f64..0.999) {
            prop_assert!(close(log_sub(u(a), u(b)).get(), r_sub(a, b), 1e-12));
            prop_assert_eq!(log_sub(u(a), u(b)), log_add(u(a), log_neg(u(b))));
        }

        #[test]
        fn cross_path_smul(l in -10.0f64..10.0, a in 0.001f64..0.999) {
            prop_assert!(close(log_smul(l, u(a)).get(), r_smul(l, a), 1e-12));
        }

        #[test]
        fn cross_path_modulus(a in 0.001f64..0.999) {
            prop_assert!(close(modulus(u(a)).get(), 0.5 + (a - 0.5).abs(), 1e-12));
        }

        #[test]
        fn round_trip(a in 0.001f64..0.999) {
            prop_assert!(close(phi_inv(phi(u(a))).get(), a, 1e-12));
        }

        #[test]
        fn homomorphism(a in 0.001f64..0.999, b in 0.001f64..0.999, l in -10.0f64..10.0) {
            let (ua, ub) = (u(a), u(b));
            prop_assert!(close(phi(log_add(ua, ub)).0, phi(ua).0 + phi(ub).0, 1e-12));
            prop_assert!(close(phi(log_smul(l, ua)).0, l * phi(ua).0, 1e-12));
        }

        #[test]
        fn triangle_inequality(a in 0.001f64..0.999, b in 0.001f64..0.999) {
            let (ua, ub) = (u(a), u(b));
            prop_assert!(modulus(log_add(ua, ub)).get() <= log_add(modulus(ua), modulus(ub)).get());
        }
    }
}
