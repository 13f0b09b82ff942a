//! Asymptotic-order algebra, the closed-form order tables, the law
//! classifier and the ratio-slope comparator between simulation and theory.

mod law;
mod order;
mod tables;

pub use law::{classify_law, law_condition_rows, LawCondition, LawKind};
pub use order::{exact_ratio, order_eval, AsymptoticOrder, Bound, Exponent};
pub use tables::{g_order, lambda_order, ln_order, lp_order, w_order, LpMode};

use crate::error::{Error, Result};
use crate::numeric::ols_slope;

/// OLS slope of `ln(value / theory(n))` against `ln n`.
///
/// A slope near zero means the measured series grows like `theory`.
pub fn ratio_slope(samples: &[(usize, f64)], theory: &AsymptoticOrder) -> Result<f64> {
    let mut ns: Vec<usize> = samples.iter().map(|s| s.0).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 3 {
        return Err(Error::param(format!("ratio slope needs >= 3 distinct n, got {}", ns.len())));
    }
    let mut x = Vec::with_capacity(samples.len());
    let mut y = Vec::with_capacity(samples.len());
    for &(n, v) in samples {
        if v <= 0.0 || !v.is_finite() {
            return Err(Error::param(format!("ratio slope needs positive values, got {v} at n={n}")));
        }
        let t = order_eval(theory, n as u64)?;
        x.push((n as f64).ln());
        y.push((v / t).ln());
    }
    Ok(ols_slope(&x, &y))
}
