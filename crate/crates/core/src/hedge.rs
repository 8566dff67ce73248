//! Discrete delta hedging on simulated geometric Brownian motion.
//!
//! The experiment sells one option at the closed-form price, holds the
//! closed-form delta in stock at each rebalance, and carries the cash
//! residual at the riskless rate. With the hedge volatility matching the
//! path volatility, the terminal replication error is pure rebalancing
//! discreteness: its mean vanishes, it is independent of the drift, and its
//! RMS shrinks like √dt.
//!
//! Paths use the exact-in-distribution log-Euler step
//! `S_{i+1} = S_i·exp((μ − σ²/2)dt + σ√dt·Z_i)`, so the path law carries no
//! discretization bias. Each path draws from its own [`SplitMix64`] stream
//! keyed by (seed, path index), making the ensemble reproducible and
//! independent of evaluation order.

use alloc::vec::Vec;

use crate::closed_form;
use crate::market::{MarketParams, OptionSpec, Quote};
use crate::rng::SplitMix64;
use crate::{Error, Result};

#[cfg(not(feature = "std"))]
use crate::num::FloatExt as _;

/// Path-simulation setup: initial spot, real-world drift, market parameters
/// (σ drives the paths, r the carry), step count, horizon and seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathConfig {
    s0: f64,
    mu: f64,
    params: MarketParams,
    steps: usize,
    horizon: f64,
    seed: u64,
}

impl PathConfig {
    pub fn new(
        s0: f64,
        mu: f64,
        params: MarketParams,
        steps: usize,
        horizon: f64,
        seed: u64,
    ) -> Result<Self> {
        if !(s0.is_finite() && s0 > 0.0) {
            return Err(Error::InvalidParam {
                name: "s0",
                value: s0,
                constraint: "a finite initial spot > 0",
            });
        }
        if !mu.is_finite() {
            return Err(Error::InvalidParam {
                name: "mu",
                value: mu,
                constraint: "a finite drift",
            });
        }
        if steps < 1 {
            return Err(Error::InvalidParam {
                name: "steps",
                value: steps as f64,
                constraint: "at least one step",
            });
        }
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidParam {
                name: "horizon",
                value: horizon,
                constraint: "a finite horizon > 0",
            });
        }
        Ok(Self {
            s0,
            mu,
            params,
            steps,
            horizon,
            seed,
        })
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn params(&self) -> &MarketParams {
        &self.params
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn dt(&self) -> f64 {
        self.horizon / self.steps as f64
    }
}

/// One GBM path as (time, spot) samples for the given stream index.
fn gbm_path(cfg: &PathConfig, stream: u64) -> Vec<(f64, f64)> {
    let dt = cfg.dt();
    let sigma = cfg.params.sigma();
    let drift = (cfg.mu - 0.5 * sigma * sigma) * dt;
    let vol = sigma * dt.sqrt();
    let mut rng = SplitMix64::for_stream(cfg.seed, stream);
    let mut path = Vec::with_capacity(cfg.steps + 1);
    let mut spot = cfg.s0;
    path.push((0.0, spot));
    for i in 1..=cfg.steps {
        spot *= (drift + vol * rng.next_standard_normal()).exp();
        path.push((i as f64 * dt, spot));
    }
    path
}

/// Simulate one GBM path with exact log-Euler steps; the same configuration
/// always yields the same path. Spots stay strictly positive.
pub fn simulate_gbm(cfg: &PathConfig) -> Vec<(f64, f64)> {
    gbm_path(cfg, 0)
}

/// Outcome of a discrete-hedging ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct HedgeReport {
    /// Terminal portfolio value minus payoff, one entry per path.
    pub terminal_errors: Vec<f64>,
    /// Root-mean-square of the terminal errors.
    pub rms_error: f64,
    /// Ensemble mean terminal error.
    pub mean_error: f64,
    /// Standard error of the mean.
    pub std_error: f64,
    /// Option premium collected at inception.
    pub premium: f64,
    pub paths: usize,
    pub dt: f64,
}

/// Run the discrete-hedging experiment over `paths` independent paths.
/// Requires the contract expiry to equal the simulation horizon; pricing and
/// hedge ratios use `cfg.params` throughout. The final rebalance happens one
/// step before expiry and the book is settled against the exact payoff.
pub fn delta_hedge(cfg: &PathConfig, spec: &OptionSpec, paths: usize) -> Result<HedgeReport> {
    if paths < 1 {
        return Err(Error::InvalidParam {
            name: "paths",
            value: paths as f64,
            constraint: "at least one path",
        });
    }
    if (spec.expiry() - cfg.horizon).abs() > 1e-12 * cfg.horizon.max(1.0) {
        return Err(Error::Precondition(
            "contract expiry must equal the simulation horizon",
        ));
    }

    let dt = cfg.dt();
    let rate = cfg.params.rate();
    let growth = (rate * dt).exp();
    let quote0 = Quote::new(cfg.s0, 0.0)?;
    let premium = closed_form::price(&quote0, spec, &cfg.params)?.value;
    let delta0 = closed_form::delta(&quote0, spec, &cfg.params)?;

    let mut terminal_errors = Vec::with_capacity(paths);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for p in 0..paths {
        let path = gbm_path(cfg, p as u64);
        // Sell the option, buy delta0 stock, bank the rest.
        let mut held = delta0;
        let mut cash = premium - held * cfg.s0;
        for &(t, spot) in &path[1..cfg.steps] {
            cash *= growth;
            let d = closed_form::delta(&Quote::new(spot, t)?, spec, &cfg.params)?;
            cash -= (d - held) * spot;
            held = d;
        }
        cash *= growth;
        let (_, terminal_spot) = path[cfg.steps];
        let err = cash + held * terminal_spot - spec.payoff(terminal_spot);
        terminal_errors.push(err);
        sum += err;
        sum_sq += err * err;
    }

    let n = paths as f64;
    let mean_error = sum / n;
    let rms_error = (sum_sq / n).sqrt();
    let variance = (sum_sq / n - mean_error * mean_error).max(0.0);
    let std_error = if paths > 1 {
        (variance / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(HedgeReport {
        terminal_errors,
        rms_error,
        mean_error,
        std_error,
        premium,
        paths,
        dt,
    })
}
