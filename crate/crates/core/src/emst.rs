//! Exact Euclidean minimum spanning trees under the torus metric.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{torus_distance_sq, Point, TorusDomain};
use crate::numeric::{mean_and_stderr, CompensatedSum};
use crate::random::{network_rng, replicate_seed};

/// Largest point set accepted by [`emst_prim`].
pub const EMST_CAP: usize = 50_000;

/// Largest point set accepted by [`emst_kruskal`], which materializes all
/// `m(m-1)/2` edges.
pub const KRUSKAL_CAP: usize = 5_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EmstResult {
    pub total_length: f64,
    /// Tree edges as `(smaller index, larger index)`.
    pub edges: Vec<(usize, usize)>,
}

fn check_size(m: usize, cap: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::EmptyPointSet);
    }
    if m > cap {
        return Err(Error::EmstCapExceeded { got: m, cap });
    }
    Ok(())
}

#[inline]
fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Dense Prim on the complete graph, `O(m^2)` time and `O(m)` memory.
///
/// Among equally short candidate edges the one with the lexicographically
/// smallest `(endpoint, endpoint)` pair is taken.
pub fn emst_prim(points: &[Point], domain: &TorusDomain) -> Result<EmstResult> {
    check_size(points.len(), EMST_CAP)?;
    Ok(prim(points, domain, true))
}

/// Tree length only; skips recording the edges.
pub fn emst_length(points: &[Point], domain: &TorusDomain) -> Result<f64> {
    check_size(points.len(), EMST_CAP)?;
    Ok(prim(points, domain, false).total_length)
}

fn prim(points: &[Point], domain: &TorusDomain, keep_edges: bool) -> EmstResult {
    let m = points.len();
    let side = domain.side();
    let mut edges = Vec::with_capacity(if keep_edges { m - 1 } else { 0 });
    let mut total = CompensatedSum::new();

    // Vertices outside the tree, kept compact with swap-removal.
    let mut xs: Vec<f64> = points[1..].iter().map(|p| p.x).collect();
    let mut ys: Vec<f64> = points[1..].iter().map(|p| p.y).collect();
    let mut id: Vec<usize> = (1..m).collect();
    let mut best = vec![f64::INFINITY; m - 1];
    let mut parent = vec![0usize; m - 1];

    let (mut px, mut py, mut pid) = (points[0].x, points[0].y, 0usize);
    while !xs.is_empty() {
        let len = xs.len();
        for j in 0..len {
            let mut dx = (xs[j] - px).abs();
            dx = dx.min(side - dx);
            let mut dy = (ys[j] - py).abs();
            dy = dy.min(side - dy);
            let d = dx * dx + dy * dy;
            if d < best[j] {
                best[j] = d;
                parent[j] = pid;
            }
        }
        let mut k = 0;
        for j in 1..len {
            let (bj, bk) = (best[j], best[k]);
            if bj < bk || (bj == bk && ordered(parent[j], id[j]) < ordered(parent[k], id[k])) {
                k = j;
            }
        }
        total.add(best[k].sqrt());
        if keep_edges {
            edges.push(ordered(parent[k], id[k]));
        }
        (px, py, pid) = (xs[k], ys[k], id[k]);
        xs.swap_remove(k);
        ys.swap_remove(k);
        id.swap_remove(k);
        best.swap_remove(k);
        parent.swap_remove(k);
    }
    EmstResult { total_length: total.value(), edges }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Kruskal over all pairs; the independent oracle for [`emst_prim`].
pub fn emst_kruskal(points: &[Point], domain: &TorusDomain) -> Result<EmstResult> {
    let m = points.len();
    check_size(m, KRUSKAL_CAP)?;
    let mut all: Vec<(f64, usize, usize)> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            all.push((torus_distance_sq(points[i], points[j], domain), i, j));
        }
    }
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut uf = UnionFind::new(m);
    let mut total = CompensatedSum::new();
    let mut edges = Vec::with_capacity(m - 1);
    for (w, i, j) in all {
        if uf.union(i, j) {
            total.add(w.sqrt());
            edges.push((i, j));
            if edges.len() == m - 1 {
                break;
            }
        }
    }
    Ok(EmstResult { total_length: total.value(), edges })
}

/// Mean `M_n / sqrt(n)` for `n` uniform points on the unit torus.
///
/// Returns `(n, mean ratio, standard error)` per entry of `n_values`.
pub fn steele_ratio_check(n_values: &[usize], replicates: usize, seed: u64) -> Result<Vec<(usize, f64, f64)>> {
    if replicates == 0 {
        return Err(Error::param("need at least one replicate"));
    }
    if n_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param("n values must be strictly increasing"));
    }
    if let Some(&n) = n_values.iter().find(|&&n| n < 64) {
        return Err(Error::param(format!("n values must be >= 64, got {n}")));
    }
    let dom = TorusDomain::unit();
    n_values
        .iter()
        .map(|&n| {
            let ratios: Vec<f64> = (0..replicates)
                .into_par_iter()
                .map(|j| {
                    let mut rng = network_rng(replicate_seed(seed ^ n as u64, j));
                    let pts: Vec<Point> =
                        (0..n).map(|_| dom.point(rng.random::<f64>(), rng.random::<f64>())).collect();
                    emst_length(&pts, &dom).map(|len| len / (n as f64).sqrt())
                })
                .collect::<Result<_>>()?;
            let (mean, se) = mean_and_stderr(&ratios);
            Ok((n, mean, se))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::torus_distance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dom100() -> TorusDomain {
        TorusDomain::for_nodes(10_000).unwrap()
    }

    fn random_points(m: usize, dom: &TorusDomain, rng: &mut ChaCha8Rng) -> Vec<Point> {
        let side = dom.side();
        (0..m).map(|_| dom.point(rng.random::<f64>() * side, rng.random::<f64>() * side)).collect()
    }

    fn edge_sum(pts: &[Point], edges: &[(usize, usize)], dom: &TorusDomain) -> f64 {
        edges.iter().map(|&(a, b)| torus_distance(pts[a], pts[b], dom)).sum()
    }

    #[test]
    fn small_examples() {
        let d = dom100();
        let line: Vec<Point> = (0..3).map(|k| d.point(k as f64, 0.0)).collect();
        assert!((emst_prim(&line, &d).unwrap().total_length - 2.0).abs() < 1e-12);
        let square = [d.point(0.0, 0.0), d.point(1.0, 0.0), d.point(1.0, 1.0), d.point(0.0, 1.0)];
        assert!((emst_prim(&square, &d).unwrap().total_length - 3.0).abs() < 1e-12);
        let one = [d.point(4.0, 4.0)];
        let k = emst_kruskal(&one, &d).unwrap();
        assert_eq!((k.total_length, k.edges.len()), (0.0, 0));
        let two = [d.point(0.0, 0.0), d.point(3.0, 0.0)];
        assert_eq!(emst_kruskal(&two, &d).unwrap().total_length, 3.0);
        assert_eq!(emst_prim(&two, &d).unwrap().total_length, 3.0);
    }

    #[test]
    fn wraparound_is_used() {
        let d = TorusDomain::for_nodes(100).unwrap();
        let pts = [d.point(0.5, 5.0), d.point(9.5, 5.0)];
        assert!((emst_prim(&pts, &d).unwrap().total_length - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_and_capped() {
        let d = dom100();
        assert!(matches!(emst_prim(&[], &d), Err(Error::EmptyPointSet)));
        assert!(matches!(emst_kruskal(&[], &d), Err(Error::EmptyPointSet)));
        let many = vec![d.point(0.0, 0.0); EMST_CAP + 1];
        assert!(matches!(emst_prim(&many, &d), Err(Error::EmstCapExceeded { .. })));
    }

    #[test]
    fn structure_invariants() {
        let d = dom100();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in [1, 2, 3, 17, 120] {
            let pts = random_points(m, &d, &mut rng);
            for res in [emst_prim(&pts, &d).unwrap(), emst_kruskal(&pts, &d).unwrap()] {
                assert_eq!(res.edges.len(), m - 1);
                let s = edge_sum(&pts, &res.edges, &d);
                assert!((s - res.total_length).abs() <= 1e-12 * s.max(1.0));
                let mut uf = UnionFind::new(m);
                assert!(res.edges.iter().all(|&(a, b)| uf.union(a, b)), "edges form a cycle");
            }
        }
    }

    #[test]
    fn prim_matches_kruskal() {
        let d = dom100();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let m = rng.random_range(2..=300);
            let pts = random_points(m, &d, &mut rng);
            let a = emst_prim(&pts, &d).unwrap().total_length;
            let b = emst_kruskal(&pts, &d).unwrap().total_length;
            assert!((a - b).abs() <= 1e-9 * b, "m={m}: {a} vs {b}");
        }
        let pts = random_points(500, &d, &mut rng);
        let a = emst_prim(&pts, &d).unwrap().total_length;
        let b = emst_kruskal(&pts, &d).unwrap().total_length;
        assert!((a - b).abs() <= 1e-9 * b);
    }

    #[test]
    fn ties_are_deterministic() {
        // lattice: every edge of the tree has length 1
        let d = TorusDomain::for_nodes(100).unwrap();
        let pts: Vec<Point> = (0..16).map(|k| d.point((k % 4) as f64, (k / 4) as f64)).collect();
        let a = emst_prim(&pts, &d).unwrap();
        let b = emst_prim(&pts, &d).unwrap();
        assert_eq!(a, b);
        assert!((a.total_length - 15.0).abs() < 1e-12);
        assert_eq!(emst_kruskal(&pts, &d).unwrap().total_length, 15.0);
    }

    #[test]
    fn cut_property() {
        let d = dom100();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let m = rng.random_range(3..=12);
            let pts = random_points(m, &d, &mut rng);
            let tree = emst_prim(&pts, &d).unwrap();
            let base = tree.total_length;
            for drop in 0..tree.edges.len() {
                let mut uf = UnionFind::new(m);
                for (e, &(a, b)) in tree.edges.iter().enumerate() {
                    if e != drop {
                        uf.union(a, b);
                    }
                }
                let (a0, b0) = tree.edges[drop];
                let removed = torus_distance(pts[a0], pts[b0], &d);
                for i in 0..m {
                    for j in i + 1..m {
                        if (i, j) == (a0, b0) || uf.find(i) == uf.find(j) {
                            continue;
                        }
                        let swapped = base - removed + torus_distance(pts[i], pts[j], &d);
                        assert!(swapped >= base - 1e-12 * base);
                    }
                }
            }
        }
    }

    #[test]
    fn identical_points_have_zero_length() {
        let d = TorusDomain::unit();
        let pts = vec![d.point(0.3, 0.3); 100];
        assert_eq!(emst_prim(&pts, &d).unwrap().total_length, 0.0);
    }

    #[test]
    fn steele_rejects_bad_grids() {
        assert!(steele_ratio_check(&[128, 64], 1, 0).is_err());
        assert!(steele_ratio_check(&[32, 64], 1, 0).is_err());
        assert!(steele_ratio_check(&[64], 0, 0).is_err());
    }

    #[test]
    fn steele_doubling_growth() {
        let out = steele_ratio_check(&[512, 1024, 2048], 4, 7).unwrap();
        for w in out.windows(2) {
            let growth = (w[1].1 * (w[1].0 as f64).sqrt()) / (w[0].1 * (w[0].0 as f64).sqrt());
            assert!((1.30..=1.52).contains(&growth), "{growth}");
        }
    }
}
