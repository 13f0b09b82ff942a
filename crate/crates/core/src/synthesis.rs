//! Network and session generation.
//!
//! A network is `n` uniform nodes on the torus of area `n`. Each node
//! sources one session: a friend count `q`, `q` anchors drawn from the
//! separation density around the source, the nodes nearest to those
//! anchors, and a destination count `r <= q`. The destinations are the
//! first `r` friends.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{nearest_node, torus_distance, GridIndex, Point, TorusDomain};
use crate::numeric::CompensatedSum;
use crate::random::{network_rng, session_rng, ExponentParams, RadialTable, SimRng, ZipfPmf, DEFAULT_GRID_POINTS};

#[derive(Debug, Clone)]
pub struct Network {
    pub domain: TorusDomain,
    pub nodes: Vec<Point>,
    pub index: GridIndex,
}

impl Network {
    /// Wraps an explicit node list, e.g. one read back from disk.
    pub fn from_nodes(domain: TorusDomain, nodes: Vec<Point>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::DegenerateNetwork(nodes.len()));
        }
        let nodes: Vec<Point> = nodes.into_iter().map(|p| domain.point(p.x, p.y)).collect();
        let index = GridIndex::build(&nodes, &domain);
        Ok(Self { domain, nodes, index })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nearest(&self, p: Point) -> usize {
        nearest_node(p, &self.index, &self.nodes, &self.domain).expect("network is nonempty")
    }
}

/// `n` i.i.d. uniform nodes on the torus of side `sqrt(n)`.
pub fn generate_network(n: usize, seed: u64) -> Result<Network> {
    if n < 2 {
        return Err(Error::DegenerateNetwork(n));
    }
    let domain = TorusDomain::for_nodes(n)?;
    let side = domain.side();
    let mut rng = network_rng(seed);
    let nodes = (0..n)
        .map(|_| {
            let x = rng.random::<f64>() * side;
            let y = rng.random::<f64>() * side;
            domain.point(x, y)
        })
        .collect();
    Network::from_nodes(domain, nodes)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Session {
    pub source: usize,
    pub q: usize,
    pub anchors: Vec<Point>,
    pub friends: Vec<usize>,
    pub r: usize,
    pub destinations: Vec<usize>,
}

impl Session {
    /// Source position followed by every anchor.
    pub fn session_points(&self, net: &Network) -> Vec<Point> {
        std::iter::once(net.nodes[self.source]).chain(self.anchors.iter().copied()).collect()
    }

    /// Source position followed by the anchors of the destinations.
    pub fn destination_geometry(&self, net: &Network) -> Vec<Point> {
        std::iter::once(net.nodes[self.source]).chain(self.anchors[..self.r].iter().copied()).collect()
    }
}

/// Shared, immutable sampling state for all sessions of one network size.
///
/// Draw order within a session is `q`, then `r`, then the anchors, so the
/// first `r` anchors are the same whether or not the remaining `q - r` are
/// drawn.
#[derive(Debug, Clone)]
pub struct SessionSampler {
    influence: Arc<ZipfPmf>,
    destination: Arc<ZipfPmf>,
    radial: Arc<RadialTable>,
}

impl SessionSampler {
    pub fn new(domain: &TorusDomain, n: usize, params: &ExponentParams) -> Result<Self> {
        params.require_uniform()?;
        if n < 2 {
            return Err(Error::DegenerateNetwork(n));
        }
        Ok(Self {
            influence: Arc::new(ZipfPmf::new(params.i, n - 1)?),
            destination: Arc::new(ZipfPmf::new(params.d, n - 1)?),
            radial: Arc::new(RadialTable::build(params.s, domain, DEFAULT_GRID_POINTS)?),
        })
    }

    pub fn for_network(net: &Network, params: &ExponentParams) -> Result<Self> {
        Self::new(&net.domain, net.len(), params)
    }

    pub fn radial_table(&self) -> &RadialTable {
        &self.radial
    }

    /// Friend and destination counts only.
    pub fn sample_counts<R: Rng + ?Sized>(&self, rng: &mut R) -> (usize, usize) {
        let q = self.influence.sample(rng);
        let r = self.destination.sample_truncated(rng, q);
        (q, r)
    }

    /// Anchors around `source`.
    pub fn sample_anchors<R: Rng + ?Sized>(
        &self,
        source: Point,
        domain: &TorusDomain,
        count: usize,
        rng: &mut R,
    ) -> Vec<Point> {
        (0..count)
            .map(|_| crate::random::sample_around(source, &self.radial, domain, rng))
            .collect()
    }

    /// Full session for `source`, drawn from `rng`.
    pub fn sample<R: Rng + ?Sized>(&self, net: &Network, source: usize, rng: &mut R) -> Session {
        let (q, r) = self.sample_counts(rng);
        let anchors = self.sample_anchors(net.nodes[source], &net.domain, q, rng);
        let friends: Vec<usize> = anchors.iter().map(|&a| net.nearest(a)).collect();
        let destinations = friends[..r].to_vec();
        Session { source, q, anchors, friends, r, destinations }
    }

    /// `(q, r, geometry)` where geometry is the source followed by the `r`
    /// destination anchors; skips the remaining anchors and the snapping.
    pub fn sample_destination_geometry<R: Rng + ?Sized>(
        &self,
        net: &Network,
        source: usize,
        rng: &mut R,
    ) -> (usize, usize, Vec<Point>) {
        let (q, r) = self.sample_counts(rng);
        let src = net.nodes[source];
        let mut pts = Vec::with_capacity(r + 1);
        pts.push(src);
        pts.extend(self.sample_anchors(src, &net.domain, r, rng));
        (q, r, pts)
    }
}

/// Session of `source` using the per-session stream of `seed`.
pub fn generate_session(net: &Network, source: usize, params: &ExponentParams, seed: u64) -> Result<Session> {
    if source >= net.len() {
        return Err(Error::param(format!("source {source} outside network of {} nodes", net.len())));
    }
    let sampler = SessionSampler::for_network(net, params)?;
    let mut rng: SimRng = session_rng(seed, source);
    Ok(sampler.sample(net, source, &mut rng))
}

/// One session per node, each on its own stream.
pub fn generate_sessions(net: &Network, params: &ExponentParams, seed: u64) -> Result<Vec<Session>> {
    use rayon::prelude::*;
    let sampler = SessionSampler::for_network(net, params)?;
    Ok((0..net.len())
        .into_par_iter()
        .map(|k| sampler.sample(net, k, &mut session_rng(seed, k)))
        .collect())
}

/// Mean torus distance between each anchor and the node it snapped to.
pub fn mean_anchor_snap_distance(net: &Network, sessions: &[Session]) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    let mut count = 0usize;
    for s in sessions {
        for (a, &f) in s.anchors.iter().zip(&s.friends) {
            acc.add(torus_distance(*a, net.nodes[f], &net.domain));
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::NoSessions);
    }
    Ok(acc.value() / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::zipf_pmf;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    fn params(i: f64, s: f64, d: f64) -> ExponentParams {
        ExponentParams::new(i, s, d).unwrap()
    }

    fn chi2_crit(dof: usize) -> f64 {
        ChiSquared::new(dof as f64).unwrap().inverse_cdf(0.999)
    }

    /// Pearson statistic with tail cells merged until each expects >= 5.
    fn pearson(observed: &[u64], expected: &[f64]) -> (f64, usize) {
        let (mut stat, mut cells) = (0.0, 0usize);
        let (mut o, mut e) = (0.0, 0.0);
        for (ob, ex) in observed.iter().zip(expected) {
            o += *ob as f64;
            e += ex;
            if e >= 5.0 {
                stat += (o - e) * (o - e) / e;
                cells += 1;
                o = 0.0;
                e = 0.0;
            }
        }
        if e > 0.0 {
            stat += (o - e) * (o - e) / e;
            cells += 1;
        }
        (stat, cells.saturating_sub(1))
    }

    #[test]
    fn small_network_in_domain() {
        let net = generate_network(4, 1).unwrap();
        assert_eq!(net.len(), 4);
        for p in &net.nodes {
            assert!((0.0..2.0).contains(&p.x) && (0.0..2.0).contains(&p.y));
        }
    }

    #[test]
    fn degenerate_network() {
        assert!(matches!(generate_network(1, 0), Err(Error::DegenerateNetwork(1))));
    }

    #[test]
    fn network_is_deterministic() {
        let a = generate_network(500, 9).unwrap();
        let b = generate_network(500, 9).unwrap();
        assert_eq!(a.nodes, b.nodes);
        let c = generate_network(500, 10).unwrap();
        assert_ne!(a.nodes, c.nodes);
    }

    #[test]
    fn placement_is_uniform() {
        let n = 10_000;
        let net = generate_network(n, 3).unwrap();
        let side = net.domain.side();
        let mut counts = [0u64; 100];
        for p in &net.nodes {
            let cx = ((p.x / side * 10.0) as usize).min(9);
            let cy = ((p.y / side * 10.0) as usize).min(9);
            counts[cy * 10 + cx] += 1;
        }
        let (stat, dof) = pearson(&counts, &[n as f64 / 100.0; 100]);
        assert!(stat < chi2_crit(dof), "{stat}");
    }

    #[test]
    fn single_friend_forces_single_destination() {
        let net = generate_network(64, 2).unwrap();
        let sampler = SessionSampler::for_network(&net, &params(50.0, 0.0, 0.0)).unwrap();
        for k in 0..64 {
            let s = sampler.sample(&net, k, &mut session_rng(5, k));
            if s.q == 1 {
                assert_eq!(s.r, 1);
            }
        }
    }

    #[test]
    fn huge_influence_exponent_gives_one_friend() {
        let net = generate_network(100, 4).unwrap();
        let p1 = zipf_pmf(50.0, 99, 1).unwrap();
        assert!(p1 > 0.999);
        let sampler = SessionSampler::for_network(&net, &params(50.0, 1.0, 1.0)).unwrap();
        let mut rng = session_rng(8, 0);
        let ones = (0..10_000).filter(|_| sampler.sample_counts(&mut rng).0 == 1).count();
        assert!(ones as f64 >= 0.999 * 10_000.0);
    }

    #[test]
    fn anchors_on_nodes_snap_to_those_nodes() {
        let dom = TorusDomain::for_nodes(25).unwrap();
        let nodes: Vec<Point> = (0..25).map(|k| dom.point((k % 5) as f64, (k / 5) as f64)).collect();
        let net = Network::from_nodes(dom, nodes.clone()).unwrap();
        let anchors = vec![nodes[7], nodes[3], nodes[24]];
        let friends: Vec<usize> = anchors.iter().map(|&a| net.nearest(a)).collect();
        assert_eq!(friends, vec![7, 3, 24]);
        let s = Session { source: 0, q: 3, anchors, friends, r: 2, destinations: vec![7, 3] };
        assert_eq!(mean_anchor_snap_distance(&net, &[s]).unwrap(), 0.0);
    }

    #[test]
    fn two_node_snap() {
        let dom = TorusDomain::for_nodes(2).unwrap();
        let nodes = vec![dom.point(0.1, 0.1), dom.point(0.9, 0.7)];
        let net = Network::from_nodes(dom, nodes.clone()).unwrap();
        let s = Session { source: 0, q: 1, anchors: vec![nodes[1]], friends: vec![1], r: 1, destinations: vec![1] };
        assert_eq!(mean_anchor_snap_distance(&net, &[s]).unwrap(), 0.0);
        assert!(matches!(mean_anchor_snap_distance(&net, &[]), Err(Error::NoSessions)));
    }

    #[test]
    fn session_invariants() {
        let net = generate_network(300, 11).unwrap();
        let sessions = generate_sessions(&net, &params(0.8, 0.5, 0.7), 12).unwrap();
        assert_eq!(sessions.len(), 300);
        for s in &sessions {
            assert!(s.q >= 1 && s.q < 300);
            assert!(s.r >= 1 && s.r <= s.q);
            assert_eq!(s.anchors.len(), s.q);
            assert_eq!(s.friends.len(), s.q);
            assert_eq!(s.destinations, s.friends[..s.r]);
            for (a, &f) in s.anchors.iter().zip(&s.friends) {
                assert_eq!(f, crate::geometry::nearest_node_linear(*a, &net.nodes, &net.domain).unwrap());
            }
        }
    }

    #[test]
    fn geometry_path_matches_full_session() {
        let net = generate_network(200, 21).unwrap();
        let sampler = SessionSampler::for_network(&net, &params(0.5, 1.5, 0.5)).unwrap();
        for k in 0..50 {
            let full = sampler.sample(&net, k, &mut session_rng(3, k));
            let (q, r, geo) = sampler.sample_destination_geometry(&net, k, &mut session_rng(3, k));
            assert_eq!((q, r), (full.q, full.r));
            assert_eq!(geo, full.destination_geometry(&net));
        }
    }

    #[test]
    fn friend_counts_follow_zipf() {
        let n = 1000;
        let dom = TorusDomain::for_nodes(n).unwrap();
        for i in [0.5, 1.5, 2.5] {
            let sampler = SessionSampler::new(&dom, n, &params(i, 0.0, 1.0)).unwrap();
            let mut rng = session_rng(99, 1);
            let draws = 100_000;
            let mut counts = vec![0u64; n - 1];
            for _ in 0..draws {
                counts[sampler.sample_counts(&mut rng).0 - 1] += 1;
            }
            let expected: Vec<f64> =
                (1..n).map(|k| draws as f64 * zipf_pmf(i, n - 1, k).unwrap()).collect();
            let (stat, dof) = pearson(&counts, &expected);
            assert!(stat < chi2_crit(dof), "i={i}: {stat} vs dof {dof}");
        }
    }

    #[test]
    fn destination_counts_follow_conditional_zipf() {
        let n = 200;
        let dom = TorusDomain::for_nodes(n).unwrap();
        let d = 0.7;
        let sampler = SessionSampler::new(&dom, n, &params(0.0, 0.0, d)).unwrap();
        for q0 in [5usize, 50] {
            let mut counts = vec![0u64; q0];
            let mut rng = session_rng(17, q0);
            let draws = 50_000;
            for _ in 0..draws {
                counts[sampler.destination.sample_truncated(&mut rng, q0) - 1] += 1;
            }
            let expected: Vec<f64> =
                (1..=q0).map(|k| draws as f64 * zipf_pmf(d, q0, k).unwrap()).collect();
            let (stat, dof) = pearson(&counts, &expected);
            assert!(stat < chi2_crit(dof), "q0={q0}: {stat}");
        }
    }
}
