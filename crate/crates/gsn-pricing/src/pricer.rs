//! Closed-form European option prices under the generalized geometric skew
//! Brownian motion S(t) = S(0)·exp(μ*t + σ√t·Z), Z ~ SN(λ, γ).
//!
//! The call formula is
//!
//!   C = S(0)·{1 − Φ₂(m, −w; ρ)/Φ(m)} − K·e^{−rt}·F̄(−w+σ√t; λ, γ)
//!
//! with m = (λσ√t+γ)/√(1+λ²) and ρ = −λ/√(1+λ²). The brace equals the
//! survival at −w of the tilted law SN(λ, γ+λσ√t), so both terms go through
//! the distribution's complementary-orthant survival. The price never takes
//! a drift argument; it is drift-free by construction.

use crate::error::{Error, Result};
use crate::gsn::{GsnDistribution, SkewParams};
use crate::normal::{cdf_raw, log_cdf_raw};
use crate::owen::owen_t_raw;
use crate::real::Real;

/// Market-side pricing inputs: spot, strike, rate, volatility, maturity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketParams<R> {
    s0: R,
    k: R,
    r: R,
    sigma: R,
    t: R,
}

impl<R: Real> MarketParams<R> {
    pub fn new(s0: R, k: R, r: R, sigma: R, t: R) -> Result<Self> {
        let spot_ok = s0 > R::zero() && s0.is_finite();
        if !spot_ok {
            return Err(Error::invalid(format!("spot must be positive and finite, got {s0}")));
        }
        let strike_ok = k > R::zero() && k.is_finite();
        if !strike_ok {
            return Err(Error::invalid(format!("strike must be positive and finite, got {k}")));
        }
        if !r.is_finite() {
            return Err(Error::invalid(format!("rate must be finite, got {r}")));
        }
        let sigma_ok = sigma > R::zero() && sigma.is_finite();
        if !sigma_ok {
            return Err(Error::invalid(format!(
                "volatility must be positive and finite, got {sigma}"
            )));
        }
        let maturity_ok = t > R::zero() && t.is_finite();
        if !maturity_ok {
            return Err(Error::invalid(format!("maturity must be positive and finite, got {t}")));
        }
        Ok(MarketParams { s0, k, r, sigma, t })
    }

    /// Same as [`MarketParams::new`] but with the variance σ² instead of σ.
    pub fn with_variance(s0: R, k: R, r: R, variance: R, t: R) -> Result<Self> {
        let variance_ok = variance > R::zero() && variance.is_finite();
        if !variance_ok {
            return Err(Error::invalid(format!(
                "variance must be positive and finite, got {variance}"
            )));
        }
        Self::new(s0, k, r, variance.sqrt(), t)
    }

    pub fn spot(&self) -> R {
        self.s0
    }

    pub fn strike(&self) -> R {
        self.k
    }

    pub fn rate(&self) -> R {
        self.r
    }

    pub fn sigma(&self) -> R {
        self.sigma
    }

    pub fn maturity(&self) -> R {
        self.t
    }

    /// K·e^{−rt}, the discounted strike.
    pub fn discounted_strike(&self) -> R {
        self.k * (-self.r * self.t).exp()
    }

    fn sigma_sqrt_t(&self) -> R {
        self.sigma * self.t.sqrt()
    }
}

/// Which closed form produced a quote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PricingMethod {
    General,
    BlackScholes,
    CorradoSu,
}

impl PricingMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            PricingMethod::General => "general",
            PricingMethod::BlackScholes => "black-scholes",
            PricingMethod::CorradoSu => "corrado-su",
        }
    }
}

/// A fully evaluated quote: both option legs plus the diagnostics (w, μ*)
/// and an echo of the inputs that produced it.
#[derive(Debug, Clone, Copy)]
pub struct PriceQuote<R> {
    pub call: R,
    pub put: R,
    pub w: R,
    pub mu_star: R,
    pub method: PricingMethod,
    pub market: MarketParams<R>,
    pub skew: SkewParams<R>,
}

/// Martingale drift μ* = r − σ²/2 − (1/t)·ln[Φ((γ+λσ√t)/√(1+λ²))/Φ(δ₀)].
pub fn mu_star<R: Real>(market: &MarketParams<R>, skew: &SkewParams<R>) -> R {
    let dist = GsnDistribution::new(*skew);
    let st = market.sigma_sqrt_t();
    market.r - market.sigma * market.sigma * R::of(0.5) - dist.log_mgf_correction(st) / market.t
}

/// The moneyness statistic of the general call formula,
/// w = [ln(S0/K) + (r + σ²/2)t − lnΦ-ratio] / (σ√t).
pub fn w_statistic<R: Real>(market: &MarketParams<R>, skew: &SkewParams<R>) -> R {
    let dist = GsnDistribution::new(*skew);
    w_with_correction(market, dist.log_mgf_correction(market.sigma_sqrt_t()))
}

fn w_with_correction<R: Real>(market: &MarketParams<R>, correction: R) -> R {
    let st = market.sigma_sqrt_t();
    ((market.s0 / market.k).ln()
        + (market.r + market.sigma * market.sigma * R::of(0.5)) * market.t
        - correction)
        / st
}

/// General closed-form call (and via parity, put) under SN(λ, γ) returns.
pub fn call_price<R: Real>(market: &MarketParams<R>, skew: &SkewParams<R>) -> Result<PriceQuote<R>> {
    let st = market.sigma_sqrt_t();
    let dist = GsnDistribution::new(*skew);
    let correction = dist.log_mgf_correction(st);
    let w = w_with_correction(market, correction);
    let mu = market.r - market.sigma * market.sigma * R::of(0.5) - correction / market.t;
    if w.is_nan() {
        return Err(Error::NumericalRegime {
            term: "w".into(),
            message: format!("moneyness statistic is NaN at sigma*sqrt(t)={st}"),
        });
    }

    let tilted = GsnDistribution::new(SkewParams::new(
        skew.lambda(),
        skew.gamma() + skew.lambda() * st,
    )?);
    let spot_term = tilted.survival(-w)?;
    let strike_term = dist.survival(-w + st)?;
    let call = market.s0 * spot_term - market.discounted_strike() * strike_term;
    if !call.is_finite() {
        let term = if spot_term.is_nan() {
            "Phi2(m,-w;rho)/Phi(m)"
        } else if strike_term.is_nan() {
            "survival(-w+sigma*sqrt(t))"
        } else {
            "call"
        };
        return Err(Error::NumericalRegime {
            term: term.into(),
            message: format!(
                "non-finite price at lambda={}, gamma={}, w={w}",
                skew.lambda(),
                skew.gamma()
            ),
        });
    }
    let put = call - market.s0 + market.discounted_strike();
    Ok(PriceQuote {
        call,
        put,
        w,
        mu_star: mu,
        method: PricingMethod::General,
        market: *market,
        skew: *skew,
    })
}

/// European put via put-call parity, P = C − S(0) + K·e^{−rt}.
pub fn put_price<R: Real>(market: &MarketParams<R>, skew: &SkewParams<R>) -> Result<R> {
    Ok(call_price(market, skew)?.put)
}

/// Black-Scholes price, the λ = 0 degenerate case:
/// C = S(0)Φ(w₁) − K·e^{−rt}Φ(w₁ − σ√t).
pub fn black_scholes_price<R: Real>(market: &MarketParams<R>) -> R {
    let st = market.sigma_sqrt_t();
    let w1 = w_with_correction(market, R::zero());
    market.s0 * cdf_raw(w1) - market.discounted_strike() * cdf_raw(w1 - st)
}

/// Corrado-Su style price, the γ = 0 degenerate case, with the strike leg
/// through the Azzalini skew-normal cdf Φ_SN(x; λ) = Φ(x) − 2T(x, λ).
pub fn corrado_su_price<R: Real>(market: &MarketParams<R>, lambda: R) -> R {
    let st = market.sigma_sqrt_t();
    let sq = (R::one() + lambda * lambda).sqrt();
    let m = lambda * st / sq;
    let correction = R::of(std::f64::consts::LN_2) + log_cdf_raw(m);
    let w2 = w_with_correction(market, correction);
    let ratio = crate::bvn::bvn_cdf_raw(m, -w2, -lambda / sq) / cdf_raw(m);
    let spot_term = market.s0 * (R::one() - ratio);
    let x = -w2 + st;
    let sn_cdf = cdf_raw(x) - R::of(2.0) * owen_t_raw(x, lambda);
    spot_term - market.discounted_strike() * (R::one() - sn_cdf)
}

/// Degenerate t = 0 convenience: the undiscounted intrinsic call value.
pub fn call_price_at_expiry<R: Real>(s0: R, k: R) -> R {
    (s0 - k).max(R::zero())
}

/// Degenerate t = 0 convenience: the intrinsic put value.
pub fn put_price_at_expiry<R: Real>(s0: R, k: R) -> R {
    (k - s0).max(R::zero())
}
