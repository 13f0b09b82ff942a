//! Square torus deployment region, wraparound metric and a uniform grid
//! index for nearest-node lookups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square region of side `side` with opposite edges identified.
///
/// A network of `n` nodes lives on a torus of area `n`, so the node
/// intensity is one per unit area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusDomain {
    side: f64,
    n_hint: usize,
}

impl TorusDomain {
    /// Torus of area `n` (side `sqrt(n)`).
    pub fn for_nodes(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("torus needs a positive node count"));
        }
        Ok(Self { side: (n as f64).sqrt(), n_hint: n })
    }

    /// The unit torus, used for scale-free checks of the EMST engine.
    pub fn unit() -> Self {
        Self { side: 1.0, n_hint: 1 }
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }

    pub fn n_hint(&self) -> usize {
        self.n_hint
    }

    /// Largest distance between two points of the torus.
    pub fn diameter(&self) -> f64 {
        self.side / std::f64::consts::SQRT_2
    }

    #[inline]
    pub(crate) fn reduce(&self, v: f64) -> f64 {
        let r = v.rem_euclid(self.side);
        // rem_euclid may round up to `side` for tiny negative inputs
        if r >= self.side {
            0.0
        } else {
            r
        }
    }

    /// Builds a point, wrapping the coordinates onto the torus.
    pub fn point(&self, x: f64, y: f64) -> Point {
        debug_assert!(x.is_finite() && y.is_finite());
        Point { x: self.reduce(x), y: self.reduce(y) }
    }
}

/// A position on the torus. Coordinates are kept in `[0, side)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[inline]
pub(crate) fn wrapped_delta(a: f64, b: f64, side: f64) -> f64 {
    let d = (a - b).abs();
    d.min(side - d)
}

/// Squared torus distance; cheaper for comparisons.
#[inline]
pub fn torus_distance_sq(a: Point, b: Point, domain: &TorusDomain) -> f64 {
    let dx = wrapped_delta(a.x, b.x, domain.side);
    let dy = wrapped_delta(a.y, b.y, domain.side);
    dx * dx + dy * dy
}

/// Euclidean distance on the torus.
#[inline]
pub fn torus_distance(a: Point, b: Point, domain: &TorusDomain) -> f64 {
    torus_distance_sq(a, b, domain).sqrt()
}

/// Uniform bucket grid over the torus.
///
/// Cells are stored densely, row-major, `cells_per_side^2` buckets each
/// holding the indices of the nodes that fall in it.
#[derive(Debug, Clone)]
pub struct GridIndex {
    cell_size: f64,
    cells_per_side: usize,
    cells: Vec<Vec<u32>>,
}

impl GridIndex {
    /// Builds the index with the default cell size `side / ceil(sqrt(n))`.
    pub fn build(nodes: &[Point], domain: &TorusDomain) -> Self {
        let per_side = ((nodes.len() as f64).sqrt().ceil() as usize).max(1);
        Self::with_cells_per_side(nodes, domain, per_side)
    }

    pub fn with_cells_per_side(nodes: &[Point], domain: &TorusDomain, per_side: usize) -> Self {
        let per_side = per_side.max(1);
        let cell_size = domain.side / per_side as f64;
        let mut cells = vec![Vec::new(); per_side * per_side];
        let mut index = Self { cell_size, cells_per_side: per_side, cells: Vec::new() };
        for (i, p) in nodes.iter().enumerate() {
            let (cx, cy) = index.cell_of(*p);
            cells[cy * per_side + cx].push(i as u32);
        }
        index.cells = cells;
        index
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn cells_per_side(&self) -> usize {
        self.cells_per_side
    }

    /// Cell coordinates of a point.
    pub fn cell_of(&self, p: Point) -> (usize, usize) {
        let g = self.cells_per_side;
        let cx = ((p.x / self.cell_size) as usize).min(g - 1);
        let cy = ((p.y / self.cell_size) as usize).min(g - 1);
        (cx, cy)
    }

    pub fn cell(&self, cx: usize, cy: usize) -> &[u32] {
        &self.cells[cy * self.cells_per_side + cx]
    }

    pub fn len(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(Vec::is_empty)
    }
}

#[inline]
fn better(d: f64, i: usize, best: Option<(f64, usize)>) -> bool {
    match best {
        None => true,
        Some((bd, bi)) => d < bd || (d == bd && i < bi),
    }
}

/// Index of the node closest to `p`, ties going to the smallest index.
///
/// Searches square rings of cells around the query cell and stops once
/// the next ring cannot hold anything closer than the current best.
pub fn nearest_node(
    p: Point,
    index: &GridIndex,
    nodes: &[Point],
    domain: &TorusDomain,
) -> Result<usize> {
    if nodes.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    let g = index.cells_per_side as isize;
    let (cx, cy) = index.cell_of(p);
    let (cx, cy) = (cx as isize, cy as isize);
    let mut best: Option<(f64, usize)> = None;

    let mut k: isize = 0;
    loop {
        if 2 * k + 1 > g {
            // the ring wraps onto cells already visited; finish exhaustively
            return Ok(nearest_node_linear(p, nodes, domain).expect("nonempty"));
        }
        for dy in -k..=k {
            let edge_row = dy == -k || dy == k;
            let mut dx = -k;
            while dx <= k {
                let ux = (cx + dx).rem_euclid(g) as usize;
                let uy = (cy + dy).rem_euclid(g) as usize;
                for &idx in index.cell(ux, uy) {
                    let i = idx as usize;
                    let d = torus_distance_sq(p, nodes[i], domain);
                    if better(d, i, best) {
                        best = Some((d, i));
                    }
                }
                dx += if edge_row || dx == k { 1 } else { 2 * k };
            }
        }
        if let Some((bd, bi)) = best {
            // every cell outside ring k is at least k cells away
            let reach = k as f64 * index.cell_size;
            if bd < reach * reach {
                return Ok(bi);
            }
        }
        k += 1;
    }
}

/// Exhaustive nearest-node scan. Used as the oracle for [`nearest_node`].
pub fn nearest_node_linear(p: Point, nodes: &[Point], domain: &TorusDomain) -> Result<usize> {
    let mut best: Option<(f64, usize)> = None;
    for (i, q) in nodes.iter().enumerate() {
        let d = torus_distance_sq(p, *q, domain);
        if better(d, i, best) {
            best = Some((d, i));
        }
    }
    best.map(|(_, i)| i).ok_or(Error::EmptyNetwork)
}
