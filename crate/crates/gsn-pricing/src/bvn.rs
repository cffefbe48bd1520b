//! Bivariate standard normal CDF Φ₂(x, y; ρ).
//!
//! Genz's refinement of the Drezner-Wesolowsky algorithm (the `BVND` routine
//! of tvpack): for |ρ| ≤ 0.925 a Gauss-Legendre rule on the arcsine-angle
//! integral, sized 6/12/20 by |ρ|; near ±1 the transformed singular-part
//! integral with Taylor correction terms. Absolute accuracy ~5e-16.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::normal::{cdf_raw, pdf_raw};
use crate::real::Real;

const FRAC_1_2PI: f64 = 0.15915494309189533576888376337251436;
const SQRT_2PI: f64 = 2.5066282746310005024157652848110453;

/// Validated correlation coefficient in [-1, 1].
///
/// Values within 1e-12 beyond ±1 clamp to the endpoint; anything further out
/// is rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlation<R>(R);

impl<R: Real> Correlation<R> {
    pub fn new(rho: R) -> Result<Self> {
        if rho.is_nan() {
            return Err(Error::domain("correlation must not be NaN"));
        }
        let one = R::one();
        let band = R::of(1e-12);
        if rho.abs() <= one {
            Ok(Correlation(rho))
        } else if rho.abs() <= one + band {
            Ok(Correlation(one.copysign(rho)))
        } else {
            Err(Error::invalid(format!(
                "correlation must lie in [-1, 1] (clamp band 1e-12), got {rho}"
            )))
        }
    }

    pub fn value(self) -> R {
        self.0
    }
}

static RULE6: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
static RULE12: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
static RULE20: OnceLock<Vec<(f64, f64)>> = OnceLock::new();

fn select_rule(abs_r: f64) -> &'static [(f64, f64)] {
    let (n, cell) = if abs_r < 0.3 {
        (6, &RULE6)
    } else if abs_r < 0.75 {
        (12, &RULE12)
    } else {
        (20, &RULE20)
    };
    cell.get_or_init(|| crate::legendre::gauss_legendre(n)).as_slice()
}

/// Φ₂(x, y; ρ) = P(X ≤ x, Y ≤ y) for standard bivariate normal.
///
/// ±∞ arguments short-circuit to the marginal values.
/// Errors with [`Error::Domain`] on NaN input.
pub fn bvn_cdf<R: Real>(x: R, y: R, corr: Correlation<R>) -> Result<R> {
    if x.is_nan() || y.is_nan() {
        return Err(Error::domain("bvn_cdf requires non-NaN arguments"));
    }
    Ok(bvn_cdf_raw(x, y, corr.value()))
}

#[inline]
pub(crate) fn bvn_cdf_raw<R: Real>(x: R, y: R, rho: R) -> R {
    bvn_upper_raw(-x, -y, rho)
}

/// P(X > h, Y > k) by quadrature of φ(x)·Φ̄((k−ρx)/√(1−ρ²)) over x > h.
/// The integrand is positive and monotone decreasing for h, k > 0 and
/// ρ < 0, so the result is relatively accurate however small it is.
fn tiny_orthant<R: Real>(h: R, k: R, rho: R) -> R {
    let s = ((R::one() - rho) * (R::one() + rho)).sqrt();
    let f = move |x: R| pdf_raw(x) * cdf_raw(-(k - rho * x) / s);
    let peak = f(h);
    if peak == R::zero() {
        return R::zero();
    }
    crate::quad::integrate(f, h, h + R::of(13.0), (peak * R::of(1e-13)).as_f64())
}

/// P(X > h, Y > k) for standard bivariate normal with correlation `rho`.
pub(crate) fn bvn_upper_raw<R: Real>(h: R, k: R, rho: R) -> R {
    let zero = R::zero();
    let one = R::one();
    if h == R::infinity() || k == R::infinity() {
        return zero;
    }
    if h == R::neg_infinity() {
        return if k == R::neg_infinity() { one } else { cdf_raw(-k) };
    }
    if k == R::neg_infinity() {
        return cdf_raw(-h);
    }
    if rho == zero {
        return cdf_raw(-h) * cdf_raw(-k);
    }
    if rho == one {
        return cdf_raw(-h.max(k));
    }
    if rho == -one {
        return (cdf_raw(-h) + cdf_raw(-k) - one).max(zero);
    }
    // An upper orthant with ρ < 0 and a far-out corner is exponentially
    // small, and the additive Drezner-Genz formulas only carry absolute
    // accuracy there. A positive-integrand quadrature keeps the relative
    // accuracy the pricing tail terms need.
    if rho < zero && h.max(k) > zero {
        let corner =
            (h * h - R::of(2.0) * rho * h * k + k * k) / ((one - rho) * (one + rho));
        if corner > R::of(20.0) {
            return tiny_orthant(h.max(k), h.min(k), rho);
        }
    }

    let mut k = k;
    let mut hk = h * k;
    let mut bvn = zero;
    let half = R::of(0.5);

    if rho.abs() < R::of(0.925) {
        let hs = (h * h + k * k) * half;
        let asr = rho.asin() * half;
        for &(x, w) in select_rule(rho.abs().as_f64()) {
            let sn = (asr * (one + R::of(x))).sin();
            bvn = bvn + R::of(w) * ((sn * hk - hs) / (one - sn * sn)).exp();
        }
        bvn * asr * R::of(FRAC_1_2PI) + cdf_raw(-h) * cdf_raw(-k)
    } else {
        if rho < zero {
            k = -k;
            hk = -hk;
        }
        let a_sq = (one - rho) * (one + rho);
        let a = a_sq.sqrt();
        let b_sq = (h - k) * (h - k);
        let c = (R::of(4.0) - hk) / R::of(8.0);
        let d = (R::of(12.0) - hk) / R::of(16.0);
        let asr = -(b_sq / a_sq + hk) * half;
        if asr > R::of(-100.0) {
            bvn = a
                * asr.exp()
                * (one - c * (b_sq - a_sq) * (one - d * b_sq / R::of(5.0)) / R::of(3.0)
                    + c * d * a_sq * a_sq / R::of(5.0));
        }
        if -hk < R::of(100.0) {
            let b = b_sq.sqrt();
            bvn = bvn
                - (-hk * half).exp()
                    * R::of(SQRT_2PI)
                    * cdf_raw(-b / a)
                    * b
                    * (one - c * b_sq * (one - d * b_sq / R::of(5.0)) / R::of(3.0));
        }
        let a2 = a * half;
        for &(x, w) in select_rule(1.0) {
            let xs = {
                let v = a2 * (one + R::of(x));
                v * v
            };
            let asr_i = -(b_sq / xs + hk) * half;
            if asr_i > R::of(-100.0) {
                let rs = (one - xs).sqrt();
                bvn = bvn
                    + a2 * R::of(w)
                        * asr_i.exp()
                        * ((-hk * (one - rs) / (R::of(2.0) * (one + rs))).exp() / rs
                            - (one + c * xs * (one + d * xs)));
            }
        }
        bvn = -bvn * R::of(FRAC_1_2PI);
        if rho > zero {
            bvn = bvn + cdf_raw(-h.max(k));
        } else {
            bvn = -bvn;
            if k > h {
                bvn = bvn + cdf_raw(k) - cdf_raw(h);
            }
        }
        bvn
    }
    .max(zero)
    .min(one)
}
