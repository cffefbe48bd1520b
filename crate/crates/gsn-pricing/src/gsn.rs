//! The generalized skew-normal distribution SN(λ, γ).
//!
//! Density φ(x)Φ(λx+γ)/Φ(δ₀) with δ₀ = γ/√(1+λ²). The distribution is the
//! conditional law of X given Y ≤ λX + γ for (X, Y) iid standard normal,
//! which yields the closed-form cdf
//!
//!   F(x) = Φ₂(x, δ₀; ρ)/Φ(δ₀),   ρ = -λ/√(1+λ²),
//!
//! an exact rejection sampler with acceptance probability Φ(δ₀), and the
//! closed-form (truncated) moment generating functions. When Φ(δ₀)
//! underflows, cdf and survival switch to a self-normalizing log-space
//! quadrature of the density, so even extreme tilts stay evaluable.

use rand::distr::{Distribution, StandardUniform};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bvn::bvn_upper_raw;
use crate::error::{Error, Result};
use crate::normal::{cdf_raw, log_cdf_raw, log_pdf_raw, pdf_raw};
use crate::quad;
use crate::real::Real;

/// Below this normalizing constant the Φ₂/Φ ratio loses all precision and
/// the log-space quadrature path takes over.
const DEEP_TAIL_NORM_FLOOR: f64 = 1e-290;
/// Acceptance probability below which rejection sampling gives way to
/// inverse-cdf sampling.
const REJECTION_FLOOR: f64 = 1e-12;
/// Truncation mass below which the truncated MGF is declared singular.
const SINGULAR_MASS_FLOOR: f64 = 1e-300;
/// Half-width of the quadrature window around the mode; the density's
/// log-curvature is at most -1, so 50 standard units are ~e⁻¹²⁵⁰ of mass.
const WINDOW_HALF_WIDTH: f64 = 50.0;

/// Shape pair (λ, γ) of the generalized skew-normal family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewParams<R> {
    lambda: R,
    gamma: R,
    delta0: R,
}

impl<R: Real> SkewParams<R> {
    /// Both parameters range over the whole real line; only finiteness is
    /// required.
    pub fn new(lambda: R, gamma: R) -> Result<Self> {
        if !lambda.is_finite() || !gamma.is_finite() {
            return Err(Error::domain(format!(
                "skew parameters must be finite, got lambda={lambda}, gamma={gamma}"
            )));
        }
        let delta0 = gamma / (R::one() + lambda * lambda).sqrt();
        Ok(SkewParams {
            lambda,
            gamma,
            delta0,
        })
    }

    pub fn lambda(&self) -> R {
        self.lambda
    }

    pub fn gamma(&self) -> R {
        self.gamma
    }

    /// γ/√(1+λ²), the argument of the normalizing Φ.
    pub fn delta0(&self) -> R {
        self.delta0
    }
}

/// A validated SN(λ, γ) distribution with cached normalizing constants.
#[derive(Debug, Clone, Copy)]
pub struct GsnDistribution<R> {
    params: SkewParams<R>,
    norm_const: R,
    log_norm_const: R,
    /// -λ/√(1+λ²), the correlation inside the Φ₂ closed forms.
    rho: R,
    sqrt_1p_l2: R,
}

impl<R: Real> GsnDistribution<R> {
    pub fn new(params: SkewParams<R>) -> Self {
        let sqrt_1p_l2 = (R::one() + params.lambda * params.lambda).sqrt();
        GsnDistribution {
            params,
            norm_const: cdf_raw(params.delta0),
            log_norm_const: log_cdf_raw(params.delta0),
            rho: -params.lambda / sqrt_1p_l2,
            sqrt_1p_l2,
        }
    }

    pub fn from_shape(lambda: R, gamma: R) -> Result<Self> {
        Ok(Self::new(SkewParams::new(lambda, gamma)?))
    }

    pub fn params(&self) -> &SkewParams<R> {
        &self.params
    }

    /// Φ(γ/√(1+λ²)), the pdf denominator and rejection acceptance rate.
    pub fn norm_const(&self) -> R {
        self.norm_const
    }

    fn deep_tail(&self) -> bool {
        self.norm_const < R::of(DEEP_TAIL_NORM_FLOOR)
    }

    /// Density at x.
    pub fn pdf(&self, x: R) -> Result<R> {
        if x.is_nan() {
            return Err(Error::domain("pdf requires a non-NaN argument"));
        }
        if !x.is_finite() {
            return Err(Error::domain(format!("pdf requires finite x, got {x}")));
        }
        if self.deep_tail() {
            return Ok(self.log_pdf(x).exp());
        }
        let lin = self.params.lambda * x + self.params.gamma;
        // a·(b/c) keeps the λ=0 reduction to φ(x) exact.
        Ok(pdf_raw(x) * (cdf_raw(lin) / self.norm_const))
    }

    /// ln of the density; finite for all finite x even when Φ(δ₀) underflows.
    pub fn log_pdf(&self, x: R) -> R {
        let lin = self.params.lambda * x + self.params.gamma;
        log_pdf_raw(x) + log_cdf_raw(lin) - self.log_norm_const
    }

    /// P(Z ≤ x) = Φ₂(x, δ₀; ρ)/Φ(δ₀).
    pub fn cdf(&self, x: R) -> Result<R> {
        if x.is_nan() {
            return Err(Error::domain("cdf requires a non-NaN argument"));
        }
        if x == R::neg_infinity() {
            return Ok(R::zero());
        }
        if x == R::infinity() {
            return Ok(R::one());
        }
        if self.deep_tail() {
            return Ok(self.tail_split(x).0);
        }
        // Φ₂(x, δ₀; ρ) = P(X' > -x, V' > -δ₀) with the same correlation.
        let joint = bvn_upper_raw(-x, -self.params.delta0, self.rho);
        Ok((joint / self.norm_const).min(R::one()))
    }

    /// P(Z > x), evaluated through the complementary Φ₂ orthant so the upper
    /// tail keeps relative accuracy instead of cancelling against 1.
    pub fn survival(&self, x: R) -> Result<R> {
        if x.is_nan() {
            return Err(Error::domain("survival requires a non-NaN argument"));
        }
        if x == R::neg_infinity() {
            return Ok(R::one());
        }
        if x == R::infinity() {
            return Ok(R::zero());
        }
        if self.deep_tail() {
            return Ok(self.tail_split(x).1);
        }
        // P(Z > x)·Φ(δ₀) = P(X > x, V ≤ δ₀) = P(X > x, -V > -δ₀), corr -ρ.
        let joint = bvn_upper_raw(x, -self.params.delta0, -self.rho);
        Ok((joint / self.norm_const).min(R::one()))
    }

    /// Self-normalizing log-space quadrature of the density around its mode;
    /// returns (cdf, survival). Only used when Φ(δ₀) underflows.
    fn tail_split(&self, x: R) -> (R, R) {
        let mode = self.mode();
        let half = R::of(WINDOW_HALF_WIDTH);
        let lo = mode - half;
        let hi = mode + half;
        if x <= lo {
            return (R::zero(), R::one());
        }
        if x >= hi {
            return (R::one(), R::zero());
        }
        // Unnormalized log-density; the normalizer cancels in the ratio.
        let g_max = self.unnormalized_log_pdf(mode);
        let f = |u: R| (self.unnormalized_log_pdf(u) - g_max).exp();
        let lower = quad::integrate(f, lo, x, 1e-14);
        let upper = quad::integrate(f, x, hi, 1e-14);
        let total = lower + upper;
        (lower / total, upper / total)
    }

    fn unnormalized_log_pdf(&self, x: R) -> R {
        log_pdf_raw(x) + log_cdf_raw(self.params.lambda * x + self.params.gamma)
    }

    /// Mode of the density, by bisection on the strictly decreasing
    /// derivative of the log-density.
    pub(crate) fn mode(&self) -> R {
        let lambda = self.params.lambda;
        if lambda == R::zero() {
            return R::zero();
        }
        let gamma = self.params.gamma;
        // d/dx log pdf = -x + λ·mills(λx+γ), mills = φ/Φ.
        let slope = |x: R| {
            let lin = lambda * x + gamma;
            let mills = (log_pdf_raw(lin) - log_cdf_raw(lin)).exp();
            -x + lambda * mills
        };
        let mut lo = -R::one();
        let mut hi = R::one();
        let mut guard = 0;
        while slope(lo) <= R::zero() && guard < 200 {
            lo = lo * R::of(2.0);
            guard += 1;
        }
        let mut guard = 0;
        while slope(hi) >= R::zero() && guard < 200 {
            hi = hi * R::of(2.0);
            guard += 1;
        }
        for _ in 0..200 {
            let mid = (lo + hi) * R::of(0.5);
            if mid <= lo || mid >= hi {
                break;
            }
            if slope(mid) > R::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) * R::of(0.5)
    }

    /// Moment generating function E[e^{aZ}] = e^{a²/2}·Φ((γ+λa)/√(1+λ²))/Φ(δ₀).
    ///
    /// Errors with [`Error::Range`] when the value overflows the scalar type.
    pub fn mgf(&self, a: R) -> Result<R> {
        if !a.is_finite() {
            return Err(Error::domain(format!("mgf requires finite a, got {a}")));
        }
        let half_a2 = a * a * R::of(0.5);
        let correction = self.log_mgf_correction(a);
        let exponent = half_a2 + correction;
        if exponent > R::max_value().ln() {
            return Err(Error::range(format!(
                "mgf overflow: exp({exponent}) exceeds the scalar range at a={a}"
            )));
        }
        let num = cdf_raw((self.params.gamma + self.params.lambda * a) / self.sqrt_1p_l2);
        if half_a2 < R::max_value().ln()
            && num >= R::min_positive_value()
            && self.norm_const >= R::min_positive_value()
        {
            return Ok(half_a2.exp() * num / self.norm_const);
        }
        Ok(exponent.exp())
    }

    /// ln Φ((γ+λa)/√(1+λ²)) − ln Φ(γ/√(1+λ²)): the log of the Φ-ratio in the
    /// MGF, evaluated in log space so deeply negative arguments survive.
    pub fn log_mgf_correction(&self, a: R) -> R {
        let shifted = (self.params.gamma + self.params.lambda * a) / self.sqrt_1p_l2;
        log_cdf_raw(shifted) - self.log_norm_const
    }

    /// MGF of the distribution truncated to [a, b]: E[e^{sZ} | a ≤ Z ≤ b].
    ///
    /// Evaluates u(λ,γ,a,b)·e^{s²/2}·[Φ₂(m, b−s; ρ) − Φ₂(m, a−s; ρ)] with
    /// m = (λs+γ)/√(1+λ²), factored through the tilted distribution
    /// SN(λ, γ+λs) whose cdf supplies the Φ₂(m, ·; ρ)/Φ(m) ratios.
    pub fn truncated_mgf(&self, s: R, a: R, b: R) -> Result<R> {
        if s.is_nan() || !s.is_finite() {
            return Err(Error::domain(format!("truncated_mgf requires finite s, got {s}")));
        }
        if a.is_nan() || b.is_nan() || a >= b {
            return Err(Error::invalid(format!(
                "truncated_mgf requires a < b, got a={a}, b={b}"
            )));
        }
        let mass = self.cdf(b)? - self.cdf(a)?;
        if mass < R::of(SINGULAR_MASS_FLOOR) {
            return Err(Error::SingularTruncation {
                message: format!(
                    "interval [{a}, {b}] carries mass below 1e-300 for lambda={}, gamma={}",
                    self.params.lambda, self.params.gamma
                ),
            });
        }
        let tilted = GsnDistribution::new(SkewParams::new(
            self.params.lambda,
            self.params.gamma + self.params.lambda * s,
        )?);
        let tilted_mass = tilted.cdf(b - s)? - tilted.cdf(a - s)?;
        Ok(self.mgf(s)? * (tilted_mass / mass))
    }

    /// n i.i.d. draws via exact rejection on the conditioning representation:
    /// propose (X, Y) iid standard normal, accept X when Y ≤ λX + γ.
    ///
    /// When the acceptance probability Φ(δ₀) drops below 1e-12, warns and
    /// falls back to inverse-cdf sampling by bisection.
    pub fn sample<G>(&self, rng: &mut G, n: usize) -> Vec<R>
    where
        G: Rng + ?Sized,
        StandardNormal: Distribution<R>,
        StandardUniform: Distribution<R>,
    {
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(n);
        if self.norm_const < R::of(REJECTION_FLOOR) {
            log::warn!(
                "rejection acceptance probability {:e} below 1e-12 for lambda={}, gamma={}; \
                 using inverse-cdf sampling",
                self.norm_const,
                self.params.lambda,
                self.params.gamma
            );
            for _ in 0..n {
                let u: R = rng.sample(StandardUniform);
                out.push(self.inverse_cdf_bisect(u));
            }
            return out;
        }
        let lambda = self.params.lambda;
        let gamma = self.params.gamma;
        while out.len() < n {
            let x: R = rng.sample(StandardNormal);
            let y: R = rng.sample(StandardNormal);
            if y <= lambda * x + gamma {
                out.push(x);
            }
        }
        out
    }

    /// One draw from the selection representation, driven by an explicit
    /// uniform and an explicit standard normal: W = Φ⁻¹(u·Φ(δ₀)) is the
    /// conditioning variable truncated to (-∞, δ₀], and Z = ρW + √(1-ρ²)·ξ.
    ///
    /// Z is monotone in both drivers, so the reflected drivers (1-u, -ξ)
    /// give an exact antithetic partner.
    pub(crate) fn draw_coupled(&self, u: R, xi: R) -> R {
        let p = (u * self.norm_const).max(R::min_positive_value());
        let w = crate::normal::quantile_raw(p);
        self.rho * w + (R::one() - self.rho * self.rho).sqrt() * xi
    }

    /// Quantile by bisection on the cdf; exact enough for sampling and
    /// antithetic pairing in the degenerate-acceptance regime.
    pub(crate) fn inverse_cdf_bisect(&self, u: R) -> R {
        let mode = self.mode();
        let half = R::of(WINDOW_HALF_WIDTH);
        let mut lo = mode - half;
        let mut hi = mode + half;
        for _ in 0..90 {
            let mid = (lo + hi) * R::of(0.5);
            if mid <= lo || mid >= hi {
                break;
            }
            let c = self.cdf(mid).expect("finite midpoint");
            if c < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) * R::of(0.5)
    }
}
