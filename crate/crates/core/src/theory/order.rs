//! Symbolic orders `n^a (ln n)^b` with exact rational exponents.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Exponent = Ratio<i64>;

const MAX_DENOMINATOR: i64 = 1_000_000;

/// Nearest rational with denominator at most 10^6, via continued fractions.
///
/// Dyadic and short decimal parameters (`0.5`, `1.5`, `0.35`) convert
/// exactly, so boundary tests like `i = 5/2 - d` are decided without
/// floating-point slop.
pub fn exact_ratio(x: f64) -> Exponent {
    assert!(x.is_finite(), "exponent must be finite");
    let sign = if x < 0.0 { -1 } else { 1 };
    let target = x.abs();
    let (mut h_prev, mut h) = (0i64, 1i64);
    let (mut k_prev, mut k) = (1i64, 0i64);
    let mut v = target;
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e12 {
            break;
        }
        let a = a as i64;
        let h_next = a * h + h_prev;
        let k_next = a * k + k_prev;
        if k_next > MAX_DENOMINATOR {
            break;
        }
        (h_prev, h, k_prev, k) = (h, h_next, k, k_next);
        if (h as f64 / k as f64 - target).abs() <= 1e-12 * target.max(1.0) {
            break;
        }
        let frac = v - a as f64;
        if frac == 0.0 {
            break;
        }
        v = 1.0 / frac;
    }
    Ratio::new(sign * h, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bound {
    Theta,
    Omega,
}

/// `n^{n_exp} (ln n)^{log_exp}` tagged as a tight (`Theta`) or lower
/// (`Omega`) bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AsymptoticOrder {
    pub n_exp: Exponent,
    pub log_exp: Exponent,
    pub bound: Bound,
}

impl AsymptoticOrder {
    pub fn theta(n_exp: Exponent, log_exp: Exponent) -> Self {
        Self { n_exp, log_exp, bound: Bound::Theta }
    }

    pub fn omega(n_exp: Exponent, log_exp: Exponent) -> Self {
        Self { n_exp, log_exp, bound: Bound::Omega }
    }

    pub fn from_ints(n_exp: i64, log_exp: i64, bound: Bound) -> Self {
        Self { n_exp: Ratio::from_integer(n_exp), log_exp: Ratio::from_integer(log_exp), bound }
    }

    /// `Theta(1)`.
    pub fn one() -> Self {
        Self::theta(Ratio::zero(), Ratio::zero())
    }

    pub fn with_bound(self, bound: Bound) -> Self {
        Self { bound, ..self }
    }

    /// Same growth, ignoring the bound tag.
    pub fn same_growth(&self, other: &Self) -> bool {
        self.n_exp == other.n_exp && self.log_exp == other.log_exp
    }

    /// Compares growth rates as `n -> infinity`.
    pub fn cmp_growth(&self, other: &Self) -> Ordering {
        self.n_exp.cmp(&other.n_exp).then(self.log_exp.cmp(&other.log_exp))
    }

    pub fn times_n_pow(self, e: Exponent) -> Self {
        Self { n_exp: self.n_exp + e, ..self }
    }

    /// Numeric value at `n`, natural log.
    pub fn eval(&self, n: u64) -> Result<f64> {
        order_eval(self, n)
    }
}

impl Mul for AsymptoticOrder {
    type Output = AsymptoticOrder;

    fn mul(self, rhs: Self) -> Self {
        let bound = if self.bound == Bound::Omega || rhs.bound == Bound::Omega {
            Bound::Omega
        } else {
            Bound::Theta
        };
        Self { n_exp: self.n_exp + rhs.n_exp, log_exp: self.log_exp + rhs.log_exp, bound }
    }
}

fn ratio_f64(r: Exponent) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `n^{n_exp} (ln n)^{log_exp}`; needs `n >= 3` so that `ln n > 1`.
pub fn order_eval(o: &AsymptoticOrder, n: u64) -> Result<f64> {
    if n < 3 {
        return Err(Error::LogRegimeUndefined(n));
    }
    let nf = n as f64;
    Ok(nf.powf(ratio_f64(o.n_exp)) * nf.ln().powf(ratio_f64(o.log_exp)))
}

fn fmt_power(f: &mut fmt::Formatter<'_>, base: &str, e: Exponent) -> fmt::Result {
    if e.is_one() {
        f.write_str(base)
    } else if e.is_integer() && e.is_positive() {
        write!(f, "{base}^{}", e.numer())
    } else if e.is_integer() {
        write!(f, "{base}^{{{}}}", e.numer())
    } else {
        write!(f, "{base}^{{{}/{}}}", e.numer(), e.denom())
    }
}

/// Canonical form, e.g. `Omega(n^{3/2} * log(n)^{-1/2})`.
impl fmt::Display for AsymptoticOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.bound {
            Bound::Theta => "Theta",
            Bound::Omega => "Omega",
        };
        write!(f, "{tag}(")?;
        match (self.n_exp.is_zero(), self.log_exp.is_zero()) {
            (true, true) => f.write_str("1")?,
            (false, true) => fmt_power(f, "n", self.n_exp)?,
            (true, false) => fmt_power(f, "log(n)", self.log_exp)?,
            (false, false) => {
                fmt_power(f, "n", self.n_exp)?;
                f.write_str(" * ")?;
                fmt_power(f, "log(n)", self.log_exp)?;
            }
        }
        f.write_str(")")
    }
}
