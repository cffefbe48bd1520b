//! European option pricing under a generalized skew-normal return law.
//!
//! The asset model is S(t) = S(0)·exp(μt + σ√t·Z) with Z ~ SN(λ, γ), the
//! two-parameter skew-normal family φ(x)Φ(λx+γ)/Φ(γ/√(1+λ²)). The crate
//! provides:
//!
//! - high-accuracy scalar kernels: normal pdf/cdf/log-cdf/quantile, Owen's T
//!   and the bivariate normal CDF ([`normal`], [`owen`], [`bvn`]);
//! - the SN(λ, γ) distribution toolkit: pdf/cdf/survival, (truncated) MGF
//!   and exact sampling ([`gsn`]);
//! - the closed-form call/put prices with their Black-Scholes (λ=0) and
//!   Corrado-Su (γ=0) degenerate cases ([`pricer`]);
//! - Monte Carlo and quadrature validation engines ([`mc`], [`quad`]);
//! - parameter-sweep grids with CSV/JSON/plot exports ([`analysis`]).
//!
//! Everything numeric is generic over the [`Real`] scalar (f32 or f64); the
//! crate-root aliases fix `f64`, which is what the published accuracy
//! targets assume.

// Coefficient tables are kept verbatim from their published sources, with
// more digits than f64 resolves.
#![allow(clippy::excessive_precision)]

pub mod analysis;
pub mod bvn;
pub mod error;
pub mod gsn;
pub mod legendre;
pub mod mc;
pub mod normal;
pub mod owen;
pub mod pricer;
pub mod quad;
pub mod real;

pub use bvn::{bvn_cdf, Correlation};
pub use error::{Error, Result};
pub use gsn::{GsnDistribution, SkewParams};
pub use mc::{McConfig, McEstimate};
pub use normal::{std_normal_cdf, std_normal_log_cdf, std_normal_pdf, std_normal_quantile};
pub use owen::owen_t;
pub use pricer::{MarketParams, PriceQuote, PricingMethod};
pub use real::Real;

/// The default scalar type used by the CLI and the acceptance suites.
pub type Scalar = f64;

/// [`MarketParams`] at the default scalar.
pub type MarketParamsF64 = MarketParams<f64>;
/// [`SkewParams`] at the default scalar.
pub type SkewParamsF64 = SkewParams<f64>;
/// [`GsnDistribution`] at the default scalar.
pub type GsnDistributionF64 = GsnDistribution<f64>;
/// [`PriceQuote`] at the default scalar.
pub type PriceQuoteF64 = PriceQuote<f64>;
