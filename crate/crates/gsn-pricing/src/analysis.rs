//! Parameter sweeps over the skew plane and their serialization.
//!
//! Grids evaluate the closed-form price over the Cartesian product of a λ
//! axis and a γ axis in λ-major order. Cells are pure closed-form
//! evaluations, so the grid can run in parallel and still reproduce the
//! standalone per-cell values bit-exactly. Exports: CSV (fixed 6-column
//! schema, 15 significant digits), JSON (rows + provenance) and plot series
//! (one (λ, C) series per γ).

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gsn::SkewParams;
use crate::pricer::{black_scholes_price, call_price, MarketParams};
use crate::real::Real;

/// Default central-difference step for skew sensitivities.
pub const DEFAULT_SENSITIVITY_STEP: f64 = 1e-4;

/// A sweep description: market inputs plus the two skew axes.
#[derive(Debug, Clone)]
pub struct GridSpec<R> {
    market: MarketParams<R>,
    lambda_axis: Vec<R>,
    gamma_axis: Vec<R>,
}

impl<R: Real> GridSpec<R> {
    pub fn new(market: MarketParams<R>, lambda_axis: Vec<R>, gamma_axis: Vec<R>) -> Result<Self> {
        validate_axis("lambda", &lambda_axis)?;
        validate_axis("gamma", &gamma_axis)?;
        Ok(GridSpec {
            market,
            lambda_axis,
            gamma_axis,
        })
    }

    pub fn market(&self) -> &MarketParams<R> {
        &self.market
    }

    pub fn lambda_axis(&self) -> &[R] {
        &self.lambda_axis
    }

    pub fn gamma_axis(&self) -> &[R] {
        &self.gamma_axis
    }
}

fn validate_axis<R: Real>(name: &str, axis: &[R]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::invalid(format!("{name} axis must not be empty")));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("{name} axis must be finite")));
    }
    if axis.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!("{name} axis must be strictly increasing")));
    }
    Ok(())
}

/// One evaluated cell. A cell that failed numerically carries NaNs and the
/// error text instead of aborting the whole grid.
#[derive(Debug, Clone)]
pub struct GridRow<R> {
    pub lambda: R,
    pub gamma: R,
    pub call: R,
    pub put: R,
    pub w: R,
    pub mu_star: R,
    pub error: Option<String>,
}

/// How a grid was produced.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub method: String,
    pub timestamp_unix: u64,
    pub version: String,
}

impl Provenance {
    fn now() -> Self {
        // SOURCE_DATE_EPOCH (the reproducible-builds convention) pins the
        // timestamp for byte-deterministic exports.
        let stamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or_else(|| {
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            });
        Provenance {
            method: "general-closed-form".to_string(),
            timestamp_unix: stamp,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Evaluated grid: |λ axis|·|γ axis| rows in λ-major order.
#[derive(Debug, Clone)]
pub struct GridResult<R> {
    pub rows: Vec<GridRow<R>>,
    pub provenance: Provenance,
    market: MarketParams<R>,
}

impl<R: Real> GridResult<R> {
    pub fn market(&self) -> &MarketParams<R> {
        &self.market
    }
}

/// Evaluate the call price over the grid, in parallel, λ-major.
pub fn evaluate_grid<R: Real>(spec: &GridSpec<R>) -> GridResult<R> {
    let cells: Vec<(R, R)> = spec
        .lambda_axis
        .iter()
        .flat_map(|&l| spec.gamma_axis.iter().map(move |&g| (l, g)))
        .collect();
    let rows: Vec<GridRow<R>> = cells
        .par_iter()
        .map(|&(lambda, gamma)| evaluate_cell(&spec.market, lambda, gamma))
        .collect();
    GridResult {
        rows,
        provenance: Provenance::now(),
        market: spec.market,
    }
}

fn evaluate_cell<R: Real>(market: &MarketParams<R>, lambda: R, gamma: R) -> GridRow<R> {
    let quote = SkewParams::new(lambda, gamma).and_then(|s| call_price(market, &s));
    match quote {
        Ok(q) => GridRow {
            lambda,
            gamma,
            call: q.call,
            put: q.put,
            w: q.w,
            mu_star: q.mu_star,
            error: None,
        },
        Err(e) => GridRow {
            lambda,
            gamma,
            call: R::nan(),
            put: R::nan(),
            w: R::nan(),
            mu_star: R::nan(),
            error: Some(e.to_string()),
        },
    }
}

/// Which skew parameter a sensitivity differentiates in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkewAxis {
    Lambda,
    Gamma,
}

/// Central-difference sensitivity ∂C/∂λ or ∂C/∂γ with step `h`
/// (default 1e-4 when `None`).
pub fn numerical_sensitivity<R: Real>(
    market: &MarketParams<R>,
    skew: &SkewParams<R>,
    axis: SkewAxis,
    h: Option<R>,
) -> Result<R> {
    let h = h.unwrap_or_else(|| R::of(DEFAULT_SENSITIVITY_STEP));
    let step_ok = h > R::zero();
    if !step_ok {
        return Err(Error::invalid(format!("step must be positive, got {h}")));
    }
    let (l, g) = (skew.lambda(), skew.gamma());
    let (up, down) = match axis {
        SkewAxis::Lambda => (SkewParams::new(l + h, g)?, SkewParams::new(l - h, g)?),
        SkewAxis::Gamma => (SkewParams::new(l, g + h)?, SkewParams::new(l, g - h)?),
    };
    let c_up = call_price(market, &up)?.call;
    let c_down = call_price(market, &down)?.call;
    Ok((c_up - c_down) / (h + h))
}

/// Verdicts along one γ row of a symmetric λ axis.
#[derive(Debug, Clone)]
pub struct GammaRowVerdict<R> {
    pub gamma: R,
    /// C is maximal at λ = 0.
    pub maximal_at_lambda_zero: bool,
    /// C does not increase as |λ| grows along the axis.
    pub nonincreasing_in_abs_lambda: bool,
    /// C < Black-Scholes price for every λ ≠ 0 cell.
    pub below_black_scholes_off_zero: bool,
}

/// Verdict along the γ axis for one λ ≠ 0 column.
#[derive(Debug, Clone)]
pub struct LambdaColumnVerdict<R> {
    pub lambda: R,
    /// C increases along γ.
    pub increasing_in_gamma: bool,
}

/// Qualitative-shape report for a grid.
#[derive(Debug, Clone)]
pub struct MonotonicityReport<R> {
    pub black_scholes: R,
    pub gamma_rows: Vec<GammaRowVerdict<R>>,
    pub lambda_columns: Vec<LambdaColumnVerdict<R>>,
    pub all_hold: bool,
}

const VERDICT_SLACK: f64 = 1e-9;

/// Evaluate the qualitative findings on a grid whose λ axis contains 0.
pub fn monotonicity_report<R: Real>(spec: &GridSpec<R>) -> Result<MonotonicityReport<R>> {
    let zero_idx = spec
        .lambda_axis
        .iter()
        .position(|&l| l == R::zero())
        .ok_or_else(|| Error::invalid("monotonicity report requires a lambda axis containing 0"))?;
    let grid = evaluate_grid(spec);
    let n_gamma = spec.gamma_axis.len();
    let call_at = |i_l: usize, i_g: usize| grid.rows[i_l * n_gamma + i_g].call;
    let bs = black_scholes_price(&spec.market);
    let slack = R::of(VERDICT_SLACK);

    let mut gamma_rows = Vec::with_capacity(n_gamma);
    for (i_g, &gamma) in spec.gamma_axis.iter().enumerate() {
        let row: Vec<R> = (0..spec.lambda_axis.len()).map(|i_l| call_at(i_l, i_g)).collect();
        let at_zero = row[zero_idx];
        let maximal_at_lambda_zero = row.iter().all(|&c| c <= at_zero + slack);
        let nonincreasing_in_abs_lambda = row[..=zero_idx].windows(2).all(|w| w[1] >= w[0] - slack)
            && row[zero_idx..].windows(2).all(|w| w[1] <= w[0] + slack);
        let below_black_scholes_off_zero = spec
            .lambda_axis
            .iter()
            .zip(&row)
            .filter(|(&l, _)| l != R::zero())
            .all(|(_, &c)| c < bs - slack);
        gamma_rows.push(GammaRowVerdict {
            gamma,
            maximal_at_lambda_zero,
            nonincreasing_in_abs_lambda,
            below_black_scholes_off_zero,
        });
    }

    let mut lambda_columns = Vec::new();
    for (i_l, &lambda) in spec.lambda_axis.iter().enumerate() {
        if lambda == R::zero() {
            continue;
        }
        let col: Vec<R> = (0..n_gamma).map(|i_g| call_at(i_l, i_g)).collect();
        let increasing_in_gamma = col.windows(2).all(|w| w[1] >= w[0] - slack);
        lambda_columns.push(LambdaColumnVerdict {
            lambda,
            increasing_in_gamma,
        });
    }

    let all_hold = gamma_rows.iter().all(|v| {
        v.maximal_at_lambda_zero && v.nonincreasing_in_abs_lambda && v.below_black_scholes_off_zero
    }) && lambda_columns.iter().all(|v| v.increasing_in_gamma);

    Ok(MonotonicityReport {
        black_scholes: bs,
        gamma_rows,
        lambda_columns,
        all_hold,
    })
}

/// Serialization targets for a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
    PlotData,
}

/// Fixed 15-significant-digit float formatting shared by all exports.
pub fn format_sig15<R: Real>(v: R) -> String {
    format!("{v:.14e}")
}

/// Serialize a grid to the chosen format.
pub fn export<R: Real, W: Write>(
    result: &GridResult<R>,
    format: ExportFormat,
    writer: &mut W,
) -> std::io::Result<()> {
    match format {
        ExportFormat::Csv => export_csv(result, writer),
        ExportFormat::Json => export_json(result, writer),
        ExportFormat::PlotData => export_plot(result, writer),
    }
}

/// Serialize into a string (exports are pure byte streams).
pub fn export_to_string<R: Real>(result: &GridResult<R>, format: ExportFormat) -> String {
    let mut buf = Vec::new();
    export(result, format, &mut buf).expect("in-memory export cannot fail");
    String::from_utf8(buf).expect("exports are ASCII")
}

/// Serialize to a file, reporting failures with the path attached.
pub fn export_to_file<R: Real>(
    result: &GridResult<R>,
    format: ExportFormat,
    path: &std::path::Path,
) -> Result<()> {
    let mut file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    export(result, format, &mut file).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn export_csv<R: Real, W: Write>(result: &GridResult<R>, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "lambda,gamma,call,put,w,mu_star")?;
    for row in &result.rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            format_sig15(row.lambda),
            format_sig15(row.gamma),
            format_sig15(row.call),
            format_sig15(row.put),
            format_sig15(row.w),
            format_sig15(row.mu_star)
        )?;
    }
    Ok(())
}

fn export_json<R: Real, W: Write>(result: &GridResult<R>, w: &mut W) -> std::io::Result<()> {
    let market = result.market();
    let rows: Vec<serde_json::Value> = result
        .rows
        .iter()
        .map(|row| {
            let mut value = json!({
                "lambda": row.lambda.as_f64(),
                "gamma": row.gamma.as_f64(),
                "call": f64_or_null(row.call),
                "put": f64_or_null(row.put),
                "w": f64_or_null(row.w),
                "mu_star": f64_or_null(row.mu_star),
            });
            if let Some(err) = &row.error {
                value["error"] = json!(err);
            }
            value
        })
        .collect();
    let doc = json!({
        "params": {
            "s0": market.spot().as_f64(),
            "strike": market.strike().as_f64(),
            "rate": market.rate().as_f64(),
            "sigma": market.sigma().as_f64(),
            "maturity": market.maturity().as_f64(),
        },
        "rows": rows,
        "provenance": {
            "method": result.provenance.method,
            "timestamp_unix": result.provenance.timestamp_unix,
            "version": result.provenance.version,
        },
    });
    writeln!(w, "{}", serde_json::to_string_pretty(&doc).expect("static JSON shape"))
}

fn f64_or_null<R: Real>(v: R) -> serde_json::Value {
    let f = v.as_f64();
    if f.is_finite() {
        json!(f)
    } else {
        serde_json::Value::Null
    }
}

fn export_plot<R: Real, W: Write>(result: &GridResult<R>, w: &mut W) -> std::io::Result<()> {
    // Rows are λ-major; a series fixes γ and sweeps λ.
    let mut gammas: Vec<R> = Vec::new();
    for row in &result.rows {
        if !gammas.contains(&row.gamma) {
            gammas.push(row.gamma);
        }
    }
    for (i, &gamma) in gammas.iter().enumerate() {
        if i > 0 {
            writeln!(w)?;
        }
        writeln!(w, "# series gamma={}", format_sig15(gamma))?;
        for row in result.rows.iter().filter(|r| r.gamma == gamma) {
            writeln!(w, "{} {}", format_sig15(row.lambda), format_sig15(row.call))?;
        }
    }
    Ok(())
}
