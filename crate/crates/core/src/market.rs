//! Validated market and contract parameter types.
//!
//! Validation happens once, at construction; every pricing routine in the
//! crate assumes its inputs satisfy the invariants encoded here.

use crate::{Error, Result};

/// Call or put.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptionKind {
    Call,
    Put,
}

impl OptionKind {
    /// Exercise value at expiry for the given spot.
    pub fn payoff(self, spot: f64, strike: f64) -> f64 {
        match self {
            OptionKind::Call => (spot - strike).max(0.0),
            OptionKind::Put => (strike - spot).max(0.0),
        }
    }
}

/// Market environment: riskless rate and volatility, both per year and
/// strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketParams {
    rate: f64,
    sigma: f64,
}

impl MarketParams {
    pub fn new(rate: f64, sigma: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidParam {
                name: "rate",
                value: rate,
                constraint: "a finite rate > 0",
            });
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParam {
                name: "sigma",
                value: sigma,
                constraint: "a finite volatility > 0",
            });
        }
        Ok(Self { rate, sigma })
    }

    /// Continuously compounded interest rate per year.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Volatility per square-root-year.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// A European option contract: kind, strike and expiry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptionSpec {
    kind: OptionKind,
    strike: f64,
    expiry: f64,
}

impl OptionSpec {
    pub fn new(kind: OptionKind, strike: f64, expiry: f64) -> Result<Self> {
        if !(strike.is_finite() && strike > 0.0) {
            return Err(Error::InvalidParam {
                name: "strike",
                value: strike,
                constraint: "a finite strike > 0",
            });
        }
        if !(expiry.is_finite() && expiry >= 0.0) {
            return Err(Error::InvalidParam {
                name: "expiry",
                value: expiry,
                constraint: "a finite expiry >= 0",
            });
        }
        Ok(Self {
            kind,
            strike,
            expiry,
        })
    }

    pub fn kind(&self) -> OptionKind {
        self.kind
    }

    pub fn strike(&self) -> f64 {
        self.strike
    }

    /// Expiry time in years.
    pub fn expiry(&self) -> f64 {
        self.expiry
    }

    /// Exercise value at expiry for the given spot.
    pub fn payoff(&self, spot: f64) -> f64 {
        self.kind.payoff(spot, self.strike)
    }
}

/// Observed state: spot price and valuation time. The pairing invariant
/// `time <= expiry` is enforced by the pricers that take a [`Quote`] together
/// with an [`OptionSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quote {
    spot: f64,
    time: f64,
}

impl Quote {
    pub fn new(spot: f64, time: f64) -> Result<Self> {
        if !(spot.is_finite() && spot >= 0.0) {
            return Err(Error::InvalidParam {
                name: "spot",
                value: spot,
                constraint: "a finite spot >= 0",
            });
        }
        if !time.is_finite() {
            return Err(Error::InvalidParam {
                name: "time",
                value: time,
                constraint: "a finite time",
            });
        }
        Ok(Self { spot, time })
    }

    pub fn spot(&self) -> f64 {
        self.spot
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Time to expiry against the paired contract; errors when the quote is
    /// dated after expiry.
    pub(crate) fn tenor(&self, spec: &OptionSpec) -> Result<f64> {
        let tau = spec.expiry() - self.time;
        if tau < 0.0 {
            return Err(Error::InvalidParam {
                name: "time",
                value: self.time,
                constraint: "a valuation time <= the option expiry",
            });
        }
        Ok(tau)
    }
}
