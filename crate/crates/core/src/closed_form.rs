//! Analytic European option pricing: the call/put formulas, the d± arguments,
//! delta, and the put-call parity identity.
//!
//! Pricing is exact at the singular limits: at expiry the terminal payoff is
//! returned, and at zero spot the call is worthless while the put equals the
//! discounted strike. The strict operations [`d_pm`] and [`delta`] reject
//! those limits instead, since d± diverges there.

use crate::market::{MarketParams, OptionKind, OptionSpec, Quote};
use crate::normal::cdf_unchecked;
use crate::{Error, Result};

#[cfg(not(feature = "std"))]
use crate::num::FloatExt as _;

/// Output of the analytic pricer: value plus the d± arguments and the hedge
/// ratio. At the singular limits `d_plus`/`d_minus` carry the limit values
/// (±infinity off the strike, 0 at it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceResult {
    pub value: f64,
    pub d_plus: f64,
    pub d_minus: f64,
    pub delta: f64,
}

/// The standardized log-moneyness arguments
/// `d± = [ln(S/E) + (r ± σ²/2)(T−t)] / (σ√(T−t))`.
///
/// Requires positive spot and a strictly positive tenor; the limits are
/// handled by [`price`].
pub fn d_pm(quote: &Quote, spec: &OptionSpec, params: &MarketParams) -> Result<(f64, f64)> {
    let tau = quote.tenor(spec)?;
    if quote.spot() <= 0.0 {
        return Err(Error::Degenerate("d_pm at zero spot"));
    }
    if tau <= 0.0 {
        return Err(Error::Degenerate("d_pm at expiry"));
    }
    Ok(d_pm_raw(quote.spot(), spec.strike(), tau, params))
}

fn d_pm_raw(spot: f64, strike: f64, tau: f64, params: &MarketParams) -> (f64, f64) {
    let sigma = params.sigma();
    let vol = sigma * tau.sqrt();
    let log_m = (spot / strike).ln();
    let d_plus = (log_m + (params.rate() + 0.5 * sigma * sigma) * tau) / vol;
    (d_plus, d_plus - vol)
}

/// Limit values of d± where the formula is singular (zero spot or zero
/// tenor): ±infinity according to the sign of ln(S/E), zero at the strike.
fn d_pm_limit(spot: f64, strike: f64) -> (f64, f64) {
    if spot <= 0.0 || spot < strike {
        (f64::NEG_INFINITY, f64::NEG_INFINITY)
    } else if spot > strike {
        (f64::INFINITY, f64::INFINITY)
    } else {
        (0.0, 0.0)
    }
}

/// Value, d± and delta of a European option.
pub fn price(quote: &Quote, spec: &OptionSpec, params: &MarketParams) -> Result<PriceResult> {
    let tau = quote.tenor(spec)?;
    let spot = quote.spot();
    let strike = spec.strike();

    if tau == 0.0 {
        // Exact terminal payoff.
        let (d_plus, d_minus) = d_pm_limit(spot, strike);
        let delta = match spec.kind() {
            OptionKind::Call => cdf_limit(d_plus),
            OptionKind::Put => cdf_limit(d_plus) - 1.0,
        };
        return Ok(PriceResult {
            value: spec.payoff(spot),
            d_plus,
            d_minus,
            delta,
        });
    }
    if spot == 0.0 {
        // An absorbed stock: the call is worthless, the put pays the
        // discounted strike.
        let discounted = strike * (-params.rate() * tau).exp();
        let (value, delta) = match spec.kind() {
            OptionKind::Call => (0.0, 0.0),
            OptionKind::Put => (discounted, -1.0),
        };
        return Ok(PriceResult {
            value,
            d_plus: f64::NEG_INFINITY,
            d_minus: f64::NEG_INFINITY,
            delta,
        });
    }

    let (d_plus, d_minus) = d_pm_raw(spot, strike, tau, params);
    let discounted = strike * (-params.rate() * tau).exp();
    let (value, delta) = match spec.kind() {
        OptionKind::Call => (
            spot * cdf_unchecked(d_plus) - discounted * cdf_unchecked(d_minus),
            cdf_unchecked(d_plus),
        ),
        OptionKind::Put => (
            discounted * cdf_unchecked(-d_minus) - spot * cdf_unchecked(-d_plus),
            cdf_unchecked(d_plus) - 1.0,
        ),
    };
    Ok(PriceResult {
        value,
        d_plus,
        d_minus,
        delta,
    })
}

fn cdf_limit(d: f64) -> f64 {
    if d == f64::INFINITY {
        1.0
    } else if d == f64::NEG_INFINITY {
        0.0
    } else {
        cdf_unchecked(d)
    }
}

/// Hedge ratio ∂V/∂S: `N(d+)` for a call, `N(d+) − 1` for a put.
///
/// Rejects the singular limits like [`d_pm`].
pub fn delta(quote: &Quote, spec: &OptionSpec, params: &MarketParams) -> Result<f64> {
    let (d_plus, _) = d_pm(quote, spec, params)?;
    Ok(match spec.kind() {
        OptionKind::Call => cdf_unchecked(d_plus),
        OptionKind::Put => cdf_unchecked(d_plus) - 1.0,
    })
}

/// Residual of the parity identity, `S + P − C − E·e^{−r(T−t)}`, for a call
/// and put sharing `strike` and `expiry`. Zero up to rounding for all valid
/// inputs.
pub fn parity_gap(quote: &Quote, strike: f64, expiry: f64, params: &MarketParams) -> Result<f64> {
    let call = OptionSpec::new(OptionKind::Call, strike, expiry)?;
    let put = OptionSpec::new(OptionKind::Put, strike, expiry)?;
    let c = price(quote, &call, params)?.value;
    let p = price(quote, &put, params)?.value;
    let tau = quote.tenor(&call)?;
    Ok(quote.spot() + p - c - strike * (-params.rate() * tau).exp())
}
