//! Property tests over randomized valid inputs.

use bsx_core::closed_form;
use bsx_core::heat::TransformContext;
use bsx_core::separable::{
    euler_roots, separable_roots, EulerSolution, SeparableSolution,
};
use bsx_core::{separable, MarketParams, OptionKind, OptionSpec, Quote};
use proptest::prelude::*;

fn market_params() -> impl Strategy<Value = MarketParams> {
    (0.01f64..1.0, 0.05f64..1.0).prop_map(|(r, sigma)| MarketParams::new(r, sigma).unwrap())
}

proptest! {
    #[test]
    fn normal_cdf_symmetry(z in -10.0f64..10.0) {
        let hi = bsx_core::normal::std_normal_cdf(z).unwrap();
        let lo = bsx_core::normal::std_normal_cdf(-z).unwrap();
        prop_assert!((hi + lo - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn normal_cdf_monotone(a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(
            bsx_core::normal::std_normal_cdf(lo).unwrap()
                <= bsx_core::normal::std_normal_cdf(hi).unwrap()
        );
    }

    #[test]
    fn parity_holds_for_random_contracts(
        params in market_params(),
        spot in 0.0f64..500.0,
        strike in 1.0f64..500.0,
        expiry in 0.05f64..3.0,
        time_frac in 0.0f64..=1.0,
    ) {
        let quote = Quote::new(spot, time_frac * expiry).unwrap();
        let gap = closed_form::parity_gap(&quote, strike, expiry, &params).unwrap();
        prop_assert!(gap.abs() <= 1e-10, "gap {gap}");
    }

    #[test]
    fn call_dominates_intrinsic(
        params in market_params(),
        spot in 0.01f64..500.0,
        strike in 1.0f64..300.0,
        expiry in 0.05f64..3.0,
    ) {
        let spec = OptionSpec::new(OptionKind::Call, strike, expiry).unwrap();
        let quote = Quote::new(spot, 0.0).unwrap();
        let value = closed_form::price(&quote, &spec, &params).unwrap().value;
        prop_assert!(value >= (spot - strike).max(0.0) - 1e-10);
        prop_assert!(value >= 0.0);
    }

    #[test]
    fn deltas_stay_in_their_bands(
        params in market_params(),
        spot in 0.01f64..500.0,
        strike in 1.0f64..300.0,
        expiry in 0.05f64..3.0,
    ) {
        let quote = Quote::new(spot, 0.0).unwrap();
        let call = OptionSpec::new(OptionKind::Call, strike, expiry).unwrap();
        let put = OptionSpec::new(OptionKind::Put, strike, expiry).unwrap();
        let (d_plus, _) = closed_form::d_pm(&quote, &call, &params).unwrap();
        // Strict bounds saturate in f64 once N(d+) rounds to 0 or 1.
        prop_assume!(d_plus.abs() <= 8.0);
        let dc = closed_form::delta(&quote, &call, &params).unwrap();
        let dp = closed_form::delta(&quote, &put, &params).unwrap();
        prop_assert!(dc > 0.0 && dc < 1.0);
        prop_assert!(dp > -1.0 && dp < 0.0);
        prop_assert_eq!(dc - dp, 1.0);
    }

    #[test]
    fn transform_round_trip(
        params in market_params(),
        spot in 1e-3f64..1e4,
        strike in 1.0f64..500.0,
        expiry in 0.05f64..3.0,
        time_frac in 0.0f64..=1.0,
    ) {
        let ctx = TransformContext::new(strike, expiry, params).unwrap();
        let quote = Quote::new(spot, time_frac * expiry).unwrap();
        let back = ctx
            .from_dimensionless(&ctx.to_dimensionless(&quote).unwrap())
            .unwrap();
        prop_assert!((back.spot() - spot).abs() <= 1e-12 * spot);
        prop_assert!((back.time() - quote.time()).abs() <= 1e-12 * expiry.max(1.0));
    }

    #[test]
    fn euler_roots_annihilate_and_satisfy_vieta(
        params in market_params(),
        lambda in -0.5f64..0.05,
        c1 in 0.1f64..5.0,
        c2 in 0.1f64..5.0,
        s in 0.5f64..3.0,
        t in 0.0f64..2.0,
    ) {
        let half_var = 0.5 * params.sigma() * params.sigma();
        // Stay in the distinct-real-root regime.
        prop_assume!((params.rate() - half_var).powi(2)
            - 4.0 * half_var * (lambda - params.rate()) > 1e-6);
        let (k1, k2) = euler_roots(lambda, &params).unwrap();
        prop_assert!(k1 > k2);
        let sum = -(params.rate() - half_var) / half_var;
        let prod = (lambda - params.rate()) / half_var;
        prop_assert!((k1 + k2 - sum).abs() <= 1e-9 * (1.0 + sum.abs()));
        prop_assert!((k1 * k2 - prod).abs() <= 1e-9 * (1.0 + prod.abs()));

        let sol = EulerSolution::new(lambda, c1, c2, params).unwrap();
        let c = separable::euler_eval(&sol, s, t).unwrap();
        let res = separable::euler_residual(&sol, s, t).unwrap();
        prop_assert!(res.abs() <= 1e-9 * (1.0 + c.abs()), "residual {res} vs value {c}");
    }

    #[test]
    fn separable_roots_annihilate(
        params in market_params(),
        sep_c in 0.001f64..0.5,
        a1 in 0.1f64..5.0,
        a2 in 0.1f64..5.0,
        s in 0.5f64..3.0,
        t in 0.0f64..2.0,
    ) {
        let sol = SeparableSolution::new(sep_c, (a1, a2), params).unwrap();
        let c = separable::separable_eval(&sol, s, t).unwrap();
        let res = separable::separable_residual(&sol, s, t).unwrap();
        prop_assert!(res.abs() <= 1e-9 * (1.0 + c.abs()), "residual {res} vs value {c}");
    }

    #[test]
    fn matched_families_share_exponents(
        params in market_params(),
        sep_c in 0.001f64..0.5,
    ) {
        let lambda = params.rate() - sep_c;
        let (k1, k2) = euler_roots(lambda, &params).unwrap();
        let (d1, d2) = separable_roots(sep_c, &params).unwrap();
        prop_assert!((k1 - d1).abs() <= 1e-12 * (1.0 + d1.abs()));
        prop_assert!((k2 - d2).abs() <= 1e-12 * (1.0 + d2.abs()));
    }
}
