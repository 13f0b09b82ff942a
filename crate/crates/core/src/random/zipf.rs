//! Bounded Zipf law `Pr(k) = k^-a / H(N, a)` on `{1, ..., N}`.

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::theory::{exact_ratio, AsymptoticOrder};

/// Zipf pmf with its cumulative weights precomputed.
///
/// The cumulative table also serves every truncated law `Zipf(a)` on
/// `{1, ..., q}` with `q <= support_max`, which is how destination counts
/// conditioned on the friend count are drawn.
#[derive(Debug, Clone)]
pub struct ZipfPmf {
    exponent: f64,
    support_max: usize,
    /// `cumulative[k-1] = sum_{j<=k} j^-a` (unnormalized).
    cumulative: Vec<f64>,
}

impl ZipfPmf {
    pub fn new(exponent: f64, support_max: usize) -> Result<Self> {
        if !exponent.is_finite() || exponent < 0.0 {
            return Err(Error::param(format!("Zipf exponent must be >= 0, got {exponent}")));
        }
        if support_max == 0 {
            return Err(Error::param("Zipf support must be nonempty"));
        }
        let mut acc = CompensatedSum::new();
        let cumulative = (1..=support_max)
            .map(|k| {
                acc.add(weight(exponent, k));
                acc.value()
            })
            .collect();
        Ok(Self { exponent, support_max, cumulative })
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn support_max(&self) -> usize {
        self.support_max
    }

    /// Normalizing constant `H(max, a)` of the law truncated at `max`.
    pub fn normalizer(&self, max: usize) -> f64 {
        self.cumulative[max - 1]
    }

    pub fn pmf(&self, k: usize) -> Result<f64> {
        self.pmf_truncated(k, self.support_max)
    }

    pub fn pmf_truncated(&self, k: usize, max: usize) -> Result<f64> {
        if max == 0 || max > self.support_max {
            return Err(Error::param(format!("truncation {max} outside [1, {}]", self.support_max)));
        }
        if k == 0 || k > max {
            return Err(Error::OutsideZipfSupport { k, max });
        }
        Ok(weight(self.exponent, k) / self.normalizer(max))
    }

    /// Inverse-CDF draw on the full support.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.sample_truncated(rng, self.support_max)
    }

    /// Inverse-CDF draw from the law restricted to `{1, ..., max}`.
    pub fn sample_truncated<R: Rng + ?Sized>(&self, rng: &mut R, max: usize) -> usize {
        debug_assert!(max >= 1 && max <= self.support_max);
        if max == 1 {
            // still consume a draw so stream positions do not depend on max
            let _: f64 = rng.random();
            return 1;
        }
        let table = &self.cumulative[..max];
        let u: f64 = rng.random::<f64>() * table[max - 1];
        let k = table.partition_point(|&c| c <= u);
        k.min(max - 1) + 1
    }
}

#[inline]
fn weight(exponent: f64, k: usize) -> f64 {
    if exponent == 0.0 {
        1.0
    } else {
        (k as f64).powf(-exponent)
    }
}

/// Normalized Zipf probability `Pr(k)` on `{1, ..., support_max}`.
pub fn zipf_pmf(exponent: f64, support_max: usize, k: usize) -> Result<f64> {
    if k == 0 || k > support_max {
        return Err(Error::OutsideZipfSupport { k, max: support_max });
    }
    ZipfPmf::new(exponent, support_max)?.pmf(k)
}

/// Growth in `n` of the Zipf normalizing prefactor at a fixed `k`, for a
/// support of size `n - 1`.
pub fn zipf_tail_class(exponent: f64) -> AsymptoticOrder {
    let a = exact_ratio(exponent);
    let one = Ratio::from_integer(1);
    if a > one {
        AsymptoticOrder::theta(Ratio::from_integer(0), Ratio::from_integer(0))
    } else if a == one {
        AsymptoticOrder::theta(Ratio::from_integer(0), Ratio::from_integer(-1))
    } else {
        AsymptoticOrder::theta(a - one, Ratio::from_integer(0))
    }
}
