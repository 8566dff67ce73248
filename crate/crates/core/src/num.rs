//! Float-math shims for `no_std` builds.
//!
//! Without `std`, the inherent `f64` transcendental methods are unavailable;
//! this trait supplies them via `libm` with identical call syntax. Modules
//! import it as `use crate::num::FloatExt as _;` under `cfg(not(feature =
//! "std"))`; with `std` enabled the inherent methods are used directly.

#![cfg_attr(feature = "std", allow(dead_code))]

#[cfg(not(feature = "std"))]
pub(crate) trait FloatExt {
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn powf(self, n: Self) -> Self;
    fn floor(self) -> Self;
    fn ceil(self) -> Self;
}

#[cfg(not(feature = "std"))]
impl FloatExt for f64 {
    #[inline]
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    #[inline]
    fn ln(self) -> f64 {
        libm::log(self)
    }
    #[inline]
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    #[inline]
    fn powf(self, n: f64) -> f64 {
        libm::pow(self, n)
    }
    #[inline]
    fn floor(self) -> f64 {
        libm::floor(self)
    }
    #[inline]
    fn ceil(self) -> f64 {
        libm::ceil(self)
    }
}
