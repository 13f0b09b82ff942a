//! Population-distance anchor placement.
//!
//! An anchor around a source `v` lands at position `X` with density
//! proportional to `(E[N(v, |X - v|)] + 1)^-s`, where `E[N(v, r)]` is the
//! expected number of nodes in the disk of radius `r`. At unit intensity on
//! a torus of area `n` that is `min(pi r^2, n)`, so the radial weight is
//!
//! ```text
//! w(r) = 2 pi r (min(pi r^2, n) + 1)^-s,   0 <= r <= side / 2
//! ```
//!
//! The law is truncated at `side / 2`, where disks stop being embedded in
//! the torus. It is the same for every source, so one [`RadialTable`] per
//! `(s, n)` serves a whole network.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{Point, TorusDomain};
use crate::numeric::CompensatedSum;

pub const DEFAULT_GRID_POINTS: usize = 4096;
const MIN_GRID_POINTS: usize = 256;

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Tabulated radial CDF for one `(s, n)` pair.
#[derive(Debug, Clone)]
pub struct RadialTable {
    s: f64,
    population: f64,
    r_max: f64,
    radii: Vec<f64>,
    cdf: Vec<f64>,
    mass: f64,
}

impl RadialTable {
    pub fn build(s: f64, domain: &TorusDomain, grid_points: usize) -> Result<Self> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::param(format!("separation exponent must be >= 0, got {s}")));
        }
        if grid_points < MIN_GRID_POINTS {
            return Err(Error::param(format!(
                "radial grid needs at least {MIN_GRID_POINTS} points, got {grid_points}"
            )));
        }
        let population = domain.area();
        let r_max = domain.side() / 2.0;
        let radii = radial_grid(r_max, grid_points);

        let mut acc = CompensatedSum::new();
        let mut cumulative = Vec::with_capacity(radii.len());
        cumulative.push(0.0);
        for pair in radii.windows(2) {
            acc.add(integrate(pair[0], pair[1], |r| weight(r, s, population)));
            cumulative.push(acc.value());
        }
        let mass = acc.value();
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Invariant(format!("radial mass {mass} for s={s}")));
        }
        let mut cdf: Vec<f64> = cumulative.iter().map(|c| c / mass).collect();
        *cdf.last_mut().expect("grid nonempty") = 1.0;
        Ok(Self { s, population, r_max, radii, cdf, mass })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Integral of the unnormalized radial weight over `[0, r_max]`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Density coefficient `Phi` that makes the truncated law integrate to 1.
    pub fn phi(&self) -> f64 {
        1.0 / self.mass
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn cdf_values(&self) -> &[f64] {
        &self.cdf
    }

    /// Unnormalized radial weight `w(r)`.
    pub fn weight(&self, r: f64) -> f64 {
        weight(r, self.s, self.population)
    }

    /// Tabulated CDF, linearly interpolated.
    pub fn cdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        if r >= self.r_max {
            return 1.0;
        }
        let j = self.radii.partition_point(|&x| x <= r) - 1;
        let t = (r - self.radii[j]) / (self.radii[j + 1] - self.radii[j]);
        self.cdf[j] + t * (self.cdf[j + 1] - self.cdf[j])
    }

    /// Inverse of the tabulated CDF, linear between grid nodes.
    pub fn quantile(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return self.r_max;
        }
        let j = self.cdf.partition_point(|&c| c <= u).clamp(1, self.cdf.len() - 1) - 1;
        let (c0, c1) = (self.cdf[j], self.cdf[j + 1]);
        if c1 <= c0 {
            return self.radii[j];
        }
        let t = (u - c0) / (c1 - c0);
        self.radii[j] + t * (self.radii[j + 1] - self.radii[j])
    }
}

#[inline]
fn weight(r: f64, s: f64, population: f64) -> f64 {
    let expected_count = (PI * r * r).min(population);
    2.0 * PI * r * (expected_count + 1.0).powf(-s)
}

fn integrate(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
        acc += w * (f(mid - half * x) + f(mid + half * x));
    }
    acc * half
}

/// Radii `0 = r_0 < ... < r_{m-1} = r_max`: geometric up to `r_max / 8`,
/// where the mass of steep laws sits, then evenly spaced.
fn radial_grid(r_max: f64, points: usize) -> Vec<f64> {
    let split = r_max / 8.0;
    let lo = r_max * 1e-7;
    let n_log = points / 2;
    let n_lin = points - 1 - n_log;
    let mut radii = Vec::with_capacity(points);
    radii.push(0.0);
    let ratio = (split / lo).ln() / (n_log - 1) as f64;
    radii.extend((0..n_log).map(|j| lo * (ratio * j as f64).exp()));
    *radii.last_mut().expect("log part nonempty") = split;
    let step = (r_max - split) / n_lin as f64;
    radii.extend((1..=n_lin).map(|j| split + step * j as f64));
    *radii.last_mut().expect("grid nonempty") = r_max;
    radii
}

/// Anchor sampler around one source.
#[derive(Debug, Clone)]
pub struct RadialSampler {
    pub source: Point,
    pub domain: TorusDomain,
    table: Arc<RadialTable>,
}

impl RadialSampler {
    pub fn build(source: Point, s: f64, domain: &TorusDomain, grid_points: usize) -> Result<Self> {
        let table = RadialTable::build(s, domain, grid_points)?;
        Ok(Self::with_table(source, domain, Arc::new(table)))
    }

    pub fn with_table(source: Point, domain: &TorusDomain, table: Arc<RadialTable>) -> Self {
        Self { source, domain: *domain, table }
    }

    pub fn table(&self) -> &RadialTable {
        &self.table
    }

    /// Draws one anchor: radius by table inversion, angle uniform.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        sample_around(self.source, &self.table, &self.domain, rng)
    }
}

#[inline]
pub(crate) fn sample_around<R: Rng + ?Sized>(
    source: Point,
    table: &RadialTable,
    domain: &TorusDomain,
    rng: &mut R,
) -> Point {
    let radius = table.quantile(rng.random::<f64>());
    let theta = 2.0 * PI * rng.random::<f64>();
    domain.point(source.x + radius * theta.cos(), source.y + radius * theta.sin())
}
