//! Univariate standard normal kernel: pdf, cdf, log-cdf and quantile.
//!
//! The cdf is built on the SunPro/FreeBSD rational approximation of erfc
//! (the same code that backs `erf`/`erfc` in libm and Go), which is accurate
//! to about one ulp over the whole double range. The log-cdf switches to a
//! Mills-ratio asymptotic expansion once the cdf itself would leave the
//! normal floating-point range.

use crate::error::{Error, Result};
use crate::real::Real;

/// 1/√(2π)
pub(crate) const FRAC_1_SQRT_2PI: f64 = 0.3989422804014326779399460599343818684;
/// ln(√(2π))
pub(crate) const LN_SQRT_2PI: f64 = 0.9189385332046727417803297364056176398;

// SunPro erf/erfc rational coefficients (FreeBSD msun s_erf.c).
const ERX: f64 = 8.45062911510467529297e-01;
const PP: [f64; 5] = [
    1.28379167095512558561e-01,
    -3.25042107247001499370e-01,
    -2.84817495755985104766e-02,
    -5.77027029648944159157e-03,
    -2.37630166566501626084e-05,
];
const QQ: [f64; 5] = [
    3.97917223959155352819e-01,
    6.50222499887672944485e-02,
    5.08130628187576562776e-03,
    1.32494738004321644526e-04,
    -3.96022827877536812320e-06,
];
const PA: [f64; 7] = [
    -2.36211856075265944077e-03,
    4.14856118683748331666e-01,
    -3.72207876035701323847e-01,
    3.18346619901161753674e-01,
    -1.10894694282396677476e-01,
    3.54783043256182359371e-02,
    -2.16637559486879084300e-03,
];
const QA: [f64; 6] = [
    1.06420880400844228286e-01,
    5.40397917702171048937e-01,
    7.18286544141962662868e-02,
    1.26171219808761642112e-01,
    1.36370839120290507362e-02,
    1.19844998467991074170e-02,
];
const RA: [f64; 8] = [
    -9.86494403484714822705e-03,
    -6.93858572707181764372e-01,
    -1.05586262253232909814e+01,
    -6.23753324503260060396e+01,
    -1.62396669462573470355e+02,
    -1.84605092906711035994e+02,
    -8.12874355063065934246e+01,
    -9.81432934416914548592e+00,
];
const SA: [f64; 8] = [
    1.96512716674392571292e+01,
    1.37657754143519042600e+02,
    4.34565877475229228821e+02,
    6.45387271733267880336e+02,
    4.29008140027567833386e+02,
    1.08635005541779435134e+02,
    6.57024977031928170135e+00,
    -6.04244152148580987438e-02,
];
const RB: [f64; 7] = [
    -9.86494292470009928597e-03,
    -7.99283237680523006574e-01,
    -1.77579549177547519889e+01,
    -1.60636384855821916062e+02,
    -6.37566443368389627722e+02,
    -1.02509513161107724954e+03,
    -4.83519191608651397019e+02,
];
const SB: [f64; 7] = [
    3.03380607434824582924e+01,
    3.25792512996573918826e+02,
    1.53672958608443695994e+03,
    3.19985821950859553908e+03,
    2.55305040643316442583e+03,
    4.74528541206955367215e+02,
    -2.24409524465858183362e+01,
];

#[inline]
fn poly<R: Real>(s: R, coeffs: &[f64]) -> R {
    let mut acc = R::of(coeffs[coeffs.len() - 1]);
    for &c in coeffs.iter().rev().skip(1) {
        acc = acc * s + R::of(c);
    }
    acc
}

/// Complementary error function, SunPro rational approximation.
pub(crate) fn erfc_raw<R: Real>(x: R) -> R {
    if x.is_nan() {
        return R::nan();
    }
    if x == R::infinity() {
        return R::zero();
    }
    if x == R::neg_infinity() {
        return R::of(2.0);
    }
    let sign = x < R::zero();
    let ax = x.abs();
    let one = R::one();

    if ax < R::of(0.84375) {
        let temp = if ax < R::of(1.3877787807814457e-17) {
            ax
        } else {
            let z = ax * ax;
            let r = poly(z, &PP);
            let s = one + z * poly(z, &QQ);
            let y = r / s;
            if ax < R::of(0.25) {
                ax + ax * y
            } else {
                R::of(0.5) + (ax * y + (ax - R::of(0.5)))
            }
        };
        return if sign { one + temp } else { one - temp };
    }
    if ax < R::of(1.25) {
        let s = ax - one;
        let p = poly(s, &PA);
        let q = one + s * poly(s, &QA);
        return if sign {
            one + R::of(ERX) + p / q
        } else {
            one - R::of(ERX) - p / q
        };
    }
    if ax < R::of(28.0) {
        let s = one / (ax * ax);
        let (r, q) = if ax < R::of(1.0 / 0.35) {
            (poly(s, &RA), one + s * poly(s, &SA))
        } else {
            if sign && ax > R::of(6.0) {
                return R::of(2.0);
            }
            (poly(s, &RB), one + s * poly(s, &SB))
        };
        // Split ax into a short leading part z so exp(-ax²) can be formed as
        // exp(-z²)·exp((z-ax)(z+ax)) without losing low-order bits.
        let z = R::of(ax.as_f64() as f32 as f64);
        let v = (-z * z - R::of(0.5625)).exp() * ((z - ax) * (z + ax) + r / q).exp();
        return if sign { R::of(2.0) - v / ax } else { v / ax };
    }
    if sign {
        R::of(2.0)
    } else {
        R::zero()
    }
}

/// φ(x) without input checking.
#[inline]
pub(crate) fn pdf_raw<R: Real>(x: R) -> R {
    R::of(FRAC_1_SQRT_2PI) * (-x * x / R::of(2.0)).exp()
}

/// ln φ(x) = -x²/2 - ln √(2π).
#[inline]
pub(crate) fn log_pdf_raw<R: Real>(x: R) -> R {
    -x * x / R::of(2.0) - R::of(LN_SQRT_2PI)
}

/// Φ(x) = erfc(-x/√2)/2 without input checking; ±∞ map to 0/1.
#[inline]
pub(crate) fn cdf_raw<R: Real>(x: R) -> R {
    R::of(0.5) * erfc_raw(-x * R::of(std::f64::consts::FRAC_1_SQRT_2))
}

/// ln Φ(x) without input checking; stable over the whole real line.
pub(crate) fn log_cdf_raw<R: Real>(x: R) -> R {
    if x == R::infinity() {
        return R::zero();
    }
    if x == R::neg_infinity() {
        return R::neg_infinity();
    }
    let p = cdf_raw(x);
    if p >= R::min_positive_value() {
        if p > R::of(0.5) {
            // ln(1 - Φ(-x)) through ln_1p keeps the upper tail exact.
            let upper = R::of(0.5) * erfc_raw(x * R::of(std::f64::consts::FRAC_1_SQRT_2));
            return (-upper).ln_1p();
        }
        return p.ln();
    }
    // Deep lower tail: Mills asymptotic
    //   Φ(x) = φ(t)/t · (1 - 1/t² + 3/t⁴ - 15/t⁶ + ...),  t = -x.
    let t = -x;
    let u = (t * t).recip();
    let mut series = R::zero();
    let mut coeff = -R::one();
    let mut power = u;
    for k in 1..=8 {
        series = series + coeff * power;
        coeff = coeff * -R::of_usize(2 * k + 1);
        power = power * u;
    }
    log_pdf_raw(t) - t.ln() + series.ln_1p()
}

/// Standard normal density.
///
/// Errors with [`Error::Domain`] for non-finite input.
pub fn std_normal_pdf<R: Real>(x: R) -> Result<R> {
    if !x.is_finite() {
        return Err(Error::domain(format!("std_normal_pdf requires finite x, got {x}")));
    }
    Ok(pdf_raw(x))
}

/// Standard normal distribution function. ±∞ map to 0 and 1.
///
/// Errors with [`Error::Domain`] for NaN.
pub fn std_normal_cdf<R: Real>(x: R) -> Result<R> {
    if x.is_nan() {
        return Err(Error::domain("std_normal_cdf requires a non-NaN argument"));
    }
    Ok(cdf_raw(x))
}

/// ln Φ(x), stable for arbitrarily negative x.
///
/// Uses ln of the direct cdf while Φ(x) stays in the normal floating-point
/// range (x ≳ -37 for f64) and the Mills-ratio asymptotic expansion below.
pub fn std_normal_log_cdf<R: Real>(x: R) -> Result<R> {
    if x.is_nan() {
        return Err(Error::domain("std_normal_log_cdf requires a non-NaN argument"));
    }
    Ok(log_cdf_raw(x))
}

/// Inverse standard normal cdf.
///
/// Newton refinement of an asymptotic/linear seed; converges to full
/// precision everywhere in (0, 1). p = 0 and p = 1 map to ∓∞.
pub fn std_normal_quantile<R: Real>(p: R) -> Result<R> {
    if p.is_nan() || p < R::zero() || p > R::one() {
        return Err(Error::domain(format!("std_normal_quantile requires p in [0, 1], got {p}")));
    }
    if p == R::zero() {
        return Ok(R::neg_infinity());
    }
    if p == R::one() {
        return Ok(R::infinity());
    }
    Ok(quantile_raw(p))
}

pub(crate) fn quantile_raw<R: Real>(p: R) -> R {
    let half = R::of(0.5);
    // Work in the lower tail; mirror afterwards.
    let (q, flip) = if p > half { (R::one() - p, true) } else { (p, false) };
    let x = if q < R::of(0.1) {
        // Tail: solve ln Φ(x) = ln q by Newton on the log scale, seeded from
        // y²/2 + ln(y√(2π)) = -ln q.
        let target = q.ln();
        let mut y = (-R::of(2.0) * target).sqrt();
        for _ in 0..3 {
            y = (-R::of(2.0) * (target + y.ln() + R::of(LN_SQRT_2PI))).sqrt();
        }
        let mut x = -y;
        for _ in 0..6 {
            let log_cdf = log_cdf_raw(x);
            let g = log_cdf - target;
            // dx = -g / (φ/Φ); the Mills ratio is exp(lnφ - lnΦ).
            let mills = (log_pdf_raw(x) - log_cdf).exp();
            let dx = -g / mills;
            x = x + dx;
            if dx.abs() <= R::of(1e-16) * (R::one() + x.abs()) {
                break;
            }
        }
        x
    } else {
        // Central region: Newton on Φ directly from a linear seed.
        let mut x = (q - half) * R::of((2.0 * std::f64::consts::PI).sqrt());
        for _ in 0..8 {
            let dx = (q - cdf_raw(x)) / pdf_raw(x);
            x = x + dx;
            if dx.abs() <= R::of(1e-16) * (R::one() + x.abs()) {
                break;
            }
        }
        x
    };
    if flip {
        -x
    } else {
        x
    }
}
