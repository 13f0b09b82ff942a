//! Monte Carlo estimate of the aggregate traffic load.
//!
//! Each session contributes the length of the minimum spanning tree over
//! its source position and the anchors of its destinations. The sum over
//! all `n` sessions, times `lambda(n)`, is the load of one replicate.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::emst::emst_length;
use crate::error::{Error, Result};
use crate::geometry::TorusDomain;
use crate::numeric::{mean_and_stderr, CompensatedSum};
use crate::random::{
    lambda_eval, network_rng, replicate_seed, session_rng, ExponentParams, LambdaClass, RadialTable,
    DEFAULT_GRID_POINTS,
};
use crate::synthesis::{generate_network, Network, Session, SessionSampler};

pub const DEFAULT_Q_CONST_THRESHOLD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub params: ExponentParams,
    pub lambda: LambdaClass,
    pub replicates: usize,
    pub seed: u64,
    /// Sessions with `q <= q_const_threshold` count towards `psi_const`.
    pub q_const_threshold: usize,
}

impl SimConfig {
    pub fn new(n: usize, params: ExponentParams, lambda: LambdaClass) -> Self {
        Self { n, params, lambda, replicates: 1, seed: 0, q_const_threshold: DEFAULT_Q_CONST_THRESHOLD }
    }

    pub fn with_replicates(self, replicates: usize) -> Self {
        Self { replicates, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::DegenerateNetwork(self.n));
        }
        if self.replicates == 0 {
            return Err(Error::param("replicates must be >= 1"));
        }
        if self.q_const_threshold == 0 {
            return Err(Error::param("q threshold must be >= 1"));
        }
        self.params.require_uniform()
    }
}

/// One replicate's measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrafficSample {
    pub n: usize,
    /// Seed of this replicate (already split from the run seed).
    pub seed: u64,
    pub total_load: f64,
    pub emst_sum: f64,
    pub psi_const: f64,
    pub psi_large: f64,
    pub sum_r: u64,
    pub wall_time: f64,
}

/// All replicates of `cfg`, in replicate order.
pub fn simulate(cfg: &SimConfig) -> Result<Vec<TrafficSample>> {
    cfg.validate()?;
    (0..cfg.replicates).map(|j| simulate_replicate(cfg, j)).collect()
}

/// Replicate `j` of `cfg`; its seed is `replicate_seed(cfg.seed, j)`.
pub fn simulate_replicate(cfg: &SimConfig, replicate: usize) -> Result<TrafficSample> {
    cfg.validate()?;
    let start = Instant::now();
    let seed = replicate_seed(cfg.seed, replicate);
    let net = generate_network(cfg.n, seed)?;
    let sampler = SessionSampler::for_network(&net, &cfg.params)?;

    let per_session: Vec<(usize, usize, f64)> = (0..cfg.n)
        .into_par_iter()
        .map(|k| {
            let mut rng = session_rng(seed, k);
            let (q, r, geometry) = sampler.sample_destination_geometry(&net, k, &mut rng);
            Ok((q, r, emst_length(&geometry, &net.domain)?))
        })
        .collect::<Result<_>>()?;

    // ordered merge keeps the sums independent of the thread count
    let mut psi_const = CompensatedSum::new();
    let mut psi_large = CompensatedSum::new();
    let mut sum_r = 0u64;
    for &(q, r, len) in &per_session {
        if q <= cfg.q_const_threshold {
            psi_const.add(len);
        } else {
            psi_large.add(len);
        }
        sum_r += r as u64;
    }
    let (psi_const, psi_large) = (psi_const.value(), psi_large.value());
    let emst_sum = psi_const + psi_large;
    Ok(TrafficSample {
        n: cfg.n,
        seed,
        total_load: lambda_eval(cfg.lambda, cfg.n) * emst_sum,
        emst_sum,
        psi_const,
        psi_large,
        sum_r,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// `sum_k r_k` per replicate, drawing only the counts.
///
/// Uses the same streams as [`simulate`], so the totals equal its `sum_r`.
pub fn destination_totals(cfg: &SimConfig) -> Result<Vec<u64>> {
    cfg.validate()?;
    let dom = TorusDomain::for_nodes(cfg.n)?;
    let sampler = SessionSampler::new(&dom, cfg.n, &cfg.params)?;
    Ok((0..cfg.replicates)
        .map(|j| {
            let seed = replicate_seed(cfg.seed, j);
            (0..cfg.n)
                .into_par_iter()
                .map(|k| sampler.sample_counts(&mut session_rng(seed, k)).1 as u64)
                .sum()
        })
        .collect())
}

/// `lambda * |EMST|` over the source and the session's destination anchors.
pub fn session_load(session: &Session, net: &Network, lambda_value: f64) -> Result<f64> {
    Ok(lambda_value * emst_length(&session.destination_geometry(net), &net.domain)?)
}

/// Tree lengths over `r` anchors drawn around one source on the torus of
/// area `n`, one value per replicate. The source itself is not included.
pub fn anchor_tree_lengths(n: usize, s: f64, r: usize, replicates: usize, seed: u64) -> Result<Vec<f64>> {
    if r == 0 {
        return Err(Error::EmptyPointSet);
    }
    let dom = TorusDomain::for_nodes(n)?;
    let table = RadialTable::build(s, &dom, DEFAULT_GRID_POINTS)?;
    (0..replicates)
        .into_par_iter()
        .map(|j| {
            let mut rng = network_rng(replicate_seed(seed, j));
            let source = dom.point(rng.random::<f64>() * dom.side(), rng.random::<f64>() * dom.side());
            let anchors: Vec<_> =
                (0..r).map(|_| crate::random::sample_around(source, &table, &dom, &mut rng)).collect();
            emst_length(&anchors, &dom)
        })
        .collect()
}

/// Mean and standard error of `total_load` across samples.
pub fn load_summary(samples: &[TrafficSample]) -> (f64, f64) {
    mean_and_stderr(&samples.iter().map(|s| s.total_load).collect::<Vec<_>>())
}
