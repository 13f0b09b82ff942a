//! File formats: network documents, sample and fit tables, traffic series,
//! geographic point sets and run manifests.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::FitModel;
use crate::geometry::{Point, TorusDomain};
use crate::synthesis::{Network, Session};
use crate::traffic::TrafficSample;

/// 17 significant digits; parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

// ---------------------------------------------------------------------------
// network documents

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub source: usize,
    pub q: usize,
    pub r: usize,
    pub anchors: Vec<[f64; 2]>,
    pub friends: Vec<usize>,
    pub destinations: Vec<usize>,
}

/// Serialized network with its sessions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkDocument {
    pub n: usize,
    pub side: f64,
    pub seed: u64,
    pub nodes: Vec<[f64; 2]>,
    pub sessions: Vec<SessionRecord>,
}

impl NetworkDocument {
    pub fn from_parts(net: &Network, sessions: &[Session], seed: u64) -> Self {
        Self {
            n: net.len(),
            side: net.domain.side(),
            seed,
            nodes: net.nodes.iter().map(|p| [p.x, p.y]).collect(),
            sessions: sessions
                .iter()
                .map(|s| SessionRecord {
                    source: s.source,
                    q: s.q,
                    r: s.r,
                    anchors: s.anchors.iter().map(|p| [p.x, p.y]).collect(),
                    friends: s.friends.clone(),
                    destinations: s.destinations.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds the network and sessions, checking the structural invariants.
    pub fn into_parts(&self) -> Result<(Network, Vec<Session>)> {
        if self.nodes.len() != self.n {
            return Err(Error::Invariant(format!("{} nodes listed for n = {}", self.nodes.len(), self.n)));
        }
        let domain = TorusDomain::for_nodes(self.n)?;
        if (domain.side() - self.side).abs() > 1e-12 * self.side {
            return Err(Error::Invariant(format!("side {} does not match n = {}", self.side, self.n)));
        }
        let net = Network::from_nodes(domain, self.nodes.iter().map(|&[x, y]| Point { x, y }).collect())?;
        let sessions = self
            .sessions
            .iter()
            .map(|s| {
                let ok = s.source < self.n
                    && s.q >= 1
                    && s.r >= 1
                    && s.r <= s.q
                    && s.anchors.len() == s.q
                    && s.friends.len() == s.q
                    && s.destinations.len() == s.r
                    && s.friends.iter().all(|&f| f < self.n)
                    && s.destinations[..] == s.friends[..s.r];
                if !ok {
                    return Err(Error::Invariant(format!("malformed session for source {}", s.source)));
                }
                Ok(Session {
                    source: s.source,
                    q: s.q,
                    anchors: s.anchors.iter().map(|&[x, y]| domain.point(x, y)).collect(),
                    friends: s.friends.clone(),
                    r: s.r,
                    destinations: s.destinations.clone(),
                })
            })
            .collect::<Result<_>>()?;
        Ok((net, sessions))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }
}

// ---------------------------------------------------------------------------
// traffic samples

pub const SAMPLE_CSV_HEADER: &str = "n,seed,total_load,emst_sum,psi_const,psi_large,sum_r,wall_time";

pub fn write_samples_csv<W: Write>(out: W, samples: &[TrafficSample]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Invariant(format!("csv write failed: {e}"));
    w.write_record(SAMPLE_CSV_HEADER.split(',')).map_err(io)?;
    for s in samples {
        w.write_record([
            s.n.to_string(),
            s.seed.to_string(),
            format_float(s.total_load),
            format_float(s.emst_sum),
            format_float(s.psi_const),
            format_float(s.psi_large),
            s.sum_r.to_string(),
            format_float(s.wall_time),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invariant(format!("csv flush failed: {e}")))?;
    Ok(())
}

pub fn read_samples_csv<R: Read>(input: R) -> Result<Vec<TrafficSample>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rd.headers().map_err(|e| parse_err(1, e))?.iter().collect::<Vec<_>>().join(",");
    if header != SAMPLE_CSV_HEADER {
        return Err(Error::Parse { line: 1, message: format!("unexpected header {header:?}") });
    }
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| parse_err(0, e))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 8 {
            return Err(Error::Parse { line, message: format!("expected 8 fields, got {}", rec.len()) });
        }
        let f = |k: usize| -> Result<f64> { parse_f64(&rec[k], line) };
        let u = |k: usize| -> Result<u64> {
            rec[k].trim().parse().map_err(|_| Error::Parse { line, message: format!("bad integer {:?}", &rec[k]) })
        };
        out.push(TrafficSample {
            n: u(0)? as usize,
            seed: u(1)?,
            total_load: f(2)?,
            emst_sum: f(3)?,
            psi_const: f(4)?,
            psi_large: f(5)?,
            sum_r: u(6)?,
            wall_time: f(7)?,
        });
    }
    Ok(out)
}

fn parse_err(line: usize, e: csv::Error) -> Error {
    let line = e.position().map_or(line, |p| p.line() as usize);
    Error::Parse { line, message: e.to_string() }
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| Error::Parse { line, message: format!("bad number {s:?}") })?;
    if !v.is_finite() {
        return Err(Error::Parse { line, message: format!("non-finite number {s:?}") });
    }
    Ok(v)
}

/// Reads two numeric columns, skipping a non-numeric header row and
/// blank or `#` comment lines.
fn read_pairs<R: Read>(input: R) -> Result<(Option<Vec<String>>, Vec<(f64, f64)>)> {
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut header = None;
    let mut out = Vec::new();
    for (k, rec) in rd.records().enumerate() {
        let rec = rec.map_err(|e| parse_err(0, e))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if rec.len() < 2 {
            return Err(Error::Parse { line, message: format!("expected 2 fields, got {}", rec.len()) });
        }
        if k == 0 && rec[0].parse::<f64>().is_err() {
            header = Some(rec.iter().map(|s| s.to_ascii_lowercase()).collect());
            continue;
        }
        out.push((parse_f64(&rec[0], line)?, parse_f64(&rec[1], line)?));
    }
    Ok((header, out))
}

/// `n,value` rows of a traffic series.
pub fn read_series_csv<R: Read>(input: R) -> Result<Vec<(f64, f64)>> {
    Ok(read_pairs(input)?.1)
}

pub const FIT_CSV_HEADER: &str = "law,a,b,c,d,r2,adj_r2";

/// One row per model; coefficients beyond the basis size are left blank.
pub fn write_fit_csv<W: Write>(out: W, models: &[FitModel]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Invariant(format!("csv write failed: {e}"));
    w.write_record(FIT_CSV_HEADER.split(',')).map_err(io)?;
    for m in models {
        let mut row = vec![m.law.name().to_string()];
        for k in 0..4 {
            row.push(m.coefficients.get(k).map(|&c| format_float(c)).unwrap_or_default());
        }
        row.push(format_float(m.r_squared));
        row.push(format_float(m.adj_r_squared));
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invariant(format!("csv flush failed: {e}")))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// geography

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoordKind {
    Planar,
    /// Columns are `lat,lon` in degrees.
    LatLon,
}

/// Reads `x,y` or `lat,lon` points. A `lat,lon` (or `latitude,longitude`)
/// header selects the geographic reading; anything else is planar.
pub fn read_geo_csv<R: Read>(input: R) -> Result<(CoordKind, Vec<(f64, f64)>)> {
    let (header, pts) = read_pairs(input)?;
    let kind = match header.as_deref() {
        Some([a, b, ..]) if a.starts_with("lat") && b.starts_with("lon") => CoordKind::LatLon,
        _ => CoordKind::Planar,
    };
    Ok((kind, pts))
}

/// Equirectangular projection of `(lat, lon)` degrees to planar `(x, y)`,
/// scaled by the cosine of the mean latitude.
pub fn project_latlon(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    if points.is_empty() {
        return Vec::new();
    }
    let lat0 = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
    let c = lat0.to_radians().cos();
    points.iter().map(|&(lat, lon)| (lon * c, lat)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Bounds {
    pub fn of(points: &[(f64, f64)]) -> Option<Self> {
        let first = points.first()?;
        let mut b = Bounds { x_min: first.0, x_max: first.0, y_min: first.1, y_max: first.1 };
        for &(x, y) in points {
            b.x_min = b.x_min.min(x);
            b.x_max = b.x_max.max(x);
            b.y_min = b.y_min.min(y);
            b.y_max = b.y_max.max(y);
        }
        Some(b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeoSummary {
    pub grid: usize,
    /// Row-major `grid x grid` cell counts.
    pub counts: Vec<u64>,
    pub total: u64,
    pub coefficient_of_variation: f64,
    pub bounds: Bounds,
}

pub const DEFAULT_CV_THRESHOLD: f64 = 0.5;

impl GeoSummary {
    pub fn is_uniform(&self, cv_threshold: f64) -> bool {
        self.coefficient_of_variation <= cv_threshold
    }

    /// Fewer points than cells makes the CV uninformative.
    pub fn is_sparse(&self) -> bool {
        self.total < (self.grid * self.grid) as u64
    }
}

fn cell(v: f64, lo: f64, hi: f64, g: usize) -> usize {
    if hi <= lo {
        return 0;
    }
    (((v - lo) / (hi - lo) * g as f64).floor().max(0.0) as usize).min(g - 1)
}

/// Counts points per cell of a `grid x grid` partition of `bounds` (the
/// points' bounding box by default). Points outside explicit bounds are
/// clamped into the border cells.
pub fn geo_summary(points: &[(f64, f64)], grid: usize, bounds: Option<Bounds>) -> Result<GeoSummary> {
    if grid == 0 {
        return Err(Error::param("grid must be >= 1"));
    }
    let bounds = bounds.or_else(|| Bounds::of(points)).ok_or(Error::EmptyPointSet)?;
    let mut counts = vec![0u64; grid * grid];
    for &(x, y) in points {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::param(format!("non-finite coordinate ({x}, {y})")));
        }
        let cx = cell(x, bounds.x_min, bounds.x_max, grid);
        let cy = cell(y, bounds.y_min, bounds.y_max, grid);
        counts[cy * grid + cx] += 1;
    }
    let total = points.len() as u64;
    let cells = counts.len() as f64;
    let mean = total as f64 / cells;
    let var = counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / cells;
    let coefficient_of_variation = if mean > 0.0 { var.sqrt() / mean } else { 0.0 };
    Ok(GeoSummary { grid, counts, total, coefficient_of_variation, bounds })
}

// ---------------------------------------------------------------------------
// run manifests

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
    pub started_unix: f64,
    pub ended_unix: f64,
    pub outputs: Vec<PathBuf>,
}

pub fn unix_now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64())
}

impl RunManifest {
    pub fn new(command: &str, config: BTreeMap<String, String>, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            config,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix: unix_now(),
            ended_unix: 0.0,
            outputs: Vec::new(),
        }
    }

    /// `<output>.manifest.json`
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.file_name().map(|s| s.to_os_string()).unwrap_or_default();
        name.push(".manifest.json");
        output.with_file_name(name)
    }

    /// Stamps the end time and writes the manifest next to `output`.
    pub fn finish(mut self, output: &Path) -> Result<PathBuf> {
        self.ended_unix = unix_now();
        self.outputs.push(output.to_path_buf());
        let path = Self::path_for(output);
        let text = serde_json::to_string_pretty(&self).expect("manifest serializes") + "\n";
        fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}
