use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use metcalfe_core::io::{
    geo_summary, project_latlon, read_geo_csv, read_samples_csv, read_series_csv, write_fit_csv, write_samples_csv,
    Bounds, CoordKind, NetworkDocument, RunManifest, DEFAULT_CV_THRESHOLD, SAMPLE_CSV_HEADER,
};
use metcalfe_core::numeric::mean_and_stderr;
use metcalfe_core::synthesis::generate_sessions;
use metcalfe_core::theory::exact_ratio;
use metcalfe_core::{
    classify_law, generate_network, lambda_eval, ln_order, rank_models, ratio_slope, AsymptoticOrder,
    ExponentParams, LambdaClass, LawKind, SimConfig, TrafficSample,
};
use serde_json::json;

use crate::config::parse_n_grid;
use crate::{CliError, GlobalArgs, ModelArgs};

type CmdResult = Result<(), CliError>;

#[derive(Clone, Copy, ValueEnum)]
pub enum LambdaArg {
    Const,
    Sqrt,
    Linear,
}

impl From<LambdaArg> for LambdaClass {
    fn from(l: LambdaArg) -> Self {
        match l {
            LambdaArg::Const => LambdaClass::Const,
            LambdaArg::Sqrt => LambdaClass::SqrtN,
            LambdaArg::Linear => LambdaClass::LinearN,
        }
    }
}

fn params(m: &ModelArgs) -> Result<ExponentParams, CliError> {
    ExponentParams::new(m.i, m.s, m.d).map_err(|e| CliError::usage(e.to_string()))
}

fn grid(spec: &str) -> Result<Vec<usize>, CliError> {
    parse_n_grid(spec).map_err(|m| CliError::usage(format!("--n-grid: {m}")))
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::data(format!("{}: {e}", path.display()))
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(|e| io_err(path, e))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| io_err(path, e))
    }
}

/// Writes `body` to `out` (plus its manifest) or to stdout.
fn emit(out: Option<&Path>, manifest: RunManifest, body: impl FnOnce(&mut dyn Write) -> CmdResult) -> CmdResult {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_err(path, e))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush().map_err(|e| io_err(path, e))?;
            manifest.finish(path)?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush().map_err(|e| CliError::data(e.to_string()))?;
        }
    }
    Ok(())
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string(v).expect("json value serializes"));
}

fn snapshot(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn model_pairs(m: &ModelArgs) -> [(&'static str, String); 3] {
    [("i", m.i.to_string()), ("s", m.s.to_string()), ("d", m.d.to_string())]
}

// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn gen(g: &GlobalArgs, a: &GenArgs) -> CmdResult {
    let p = params(&a.model)?;
    let net = generate_network(a.n, g.seed)?;
    let sessions = generate_sessions(&net, &p, g.seed)?;
    let doc = NetworkDocument::from_parts(&net, &sessions, g.seed);
    let mut cfg = vec![("n", a.n.to_string())];
    cfg.extend(model_pairs(&a.model));
    let manifest = RunManifest::new("gen", snapshot(&cfg), g.seed);
    match (&a.out, g.json) {
        (Some(path), json) => {
            emit(Some(path), manifest, |w| w.write_all(doc.to_json().as_bytes()).map_err(|e| io_err(path, e)))?;
            if json {
                print_json(&json!({"command": "gen", "n": a.n, "sessions": sessions.len(), "out": path}));
            }
            Ok(())
        }
        (None, _) => emit(None, manifest, |w| w.write_all(doc.to_json().as_bytes()).map_err(|e| CliError::data(e.to_string()))),
    }
}

// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct SimulateArgs {
    /// Network sizes: `a,b,c` or geometric `start:end:factor`.
    #[arg(long)]
    pub n_grid: String,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "const")]
    pub lambda: LambdaArg,
    #[arg(long, default_value_t = 8)]
    pub replicates: usize,
    /// Output CSV (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn run_grid(seed: u64, ns: &[usize], p: ExponentParams, lambda: LambdaClass, replicates: usize) -> Result<Vec<TrafficSample>, CliError> {
    let mut samples = Vec::new();
    for &n in ns {
        let cfg = SimConfig::new(n, p, lambda).with_replicates(replicates).with_seed(seed);
        samples.extend(metcalfe_core::simulate(&cfg)?);
    }
    Ok(samples)
}

pub fn simulate_cmd_config(a: &SimulateArgs, ns: &[usize]) -> BTreeMap<String, String> {
    let mut cfg = vec![
        ("n-grid", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")),
        ("lambda", LambdaClass::from(a.lambda).name().to_string()),
        ("replicates", a.replicates.to_string()),
    ];
    cfg.extend(model_pairs(&a.model));
    snapshot(&cfg)
}

pub fn simulate(g: &GlobalArgs, a: &SimulateArgs) -> CmdResult {
    let ns = grid(&a.n_grid)?;
    let p = params(&a.model)?;
    if a.replicates == 0 {
        return Err(CliError::usage("--replicates must be >= 1"));
    }
    let manifest = RunManifest::new("simulate", simulate_cmd_config(a, &ns), g.seed);
    let samples = run_grid(g.seed, &ns, p, a.lambda.into(), a.replicates)?;
    if g.json {
        if let Some(path) = &a.out {
            emit(Some(path), manifest, |w| Ok(write_samples_csv(w, &samples)?))?;
        }
        print_json(&json!({"command": "simulate", "header": SAMPLE_CSV_HEADER, "samples": samples, "out": a.out}));
        return Ok(());
    }
    emit(a.out.as_deref(), manifest, |w| Ok(write_samples_csv(w, &samples)?))
}

// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct TheoryArgs {
    #[arg(long, value_enum, default_value = "const")]
    pub lambda: LambdaArg,
    #[command(flatten)]
    pub model: ModelArgs,
}

pub fn theory(g: &GlobalArgs, a: &TheoryArgs) -> CmdResult {
    let p = params(&a.model)?;
    let lambda = a.lambda.into();
    let order = ln_order(lambda, &p)?;
    let law = classify_law(lambda, &p)?;
    let law_name = match law {
        LawKind::Other(_) => "Other",
        _ => law.name(),
    };
    if g.json {
        print_json(&json!({
            "command": "theory",
            "lambda": lambda.name(),
            "i": p.i, "s": p.s, "d": p.d,
            "order": order.to_string(),
            "n_exp": order.n_exp.to_string(),
            "log_exp": order.log_exp.to_string(),
            "law": law_name,
        }));
    } else {
        println!("{order} law={law_name}");
    }
    Ok(())
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, ValueEnum)]
pub enum Preset {
    Metcalfe,
    Sarnoff,
    Odlyzko,
    Cube,
    /// The four law-labeled regimes.
    All,
}

#[derive(Args)]
pub struct ScalingArgs {
    #[arg(long, default_value = "256:4096:2")]
    pub n_grid: String,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "const")]
    pub lambda: LambdaArg,
    /// Named regime(s); overrides --i --s --d --lambda.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, default_value_t = 8)]
    pub replicates: usize,
    /// Half-width of the accepted slope band.
    #[arg(long, default_value_t = 0.15)]
    pub tolerance: f64,
    /// Compare against `n^a * log(n)^b` given as `a,b` instead of the table order.
    #[arg(long)]
    pub theory: Option<String>,
    /// Read measurements (`n,value` or a simulate CSV) instead of simulating.
    #[arg(long)]
    pub from: Option<PathBuf>,
    /// Report file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Regime {
    label: String,
    lambda: LambdaClass,
    params: Option<ExponentParams>,
}

fn preset_regimes(p: Preset) -> Vec<(&'static str, LambdaClass, [f64; 3])> {
    let all = [
        ("Metcalfe", LambdaClass::Const, [0.5, 0.5, 0.5]),
        ("Sarnoff", LambdaClass::Const, [0.0, 3.0, 3.0]),
        ("Odlyzko", LambdaClass::Const, [0.0, 2.0, 3.0]),
        ("Cube", LambdaClass::LinearN, [0.5, 0.5, 0.5]),
    ];
    match p {
        Preset::Metcalfe => vec![all[0]],
        Preset::Sarnoff => vec![all[1]],
        Preset::Odlyzko => vec![all[2]],
        Preset::Cube => vec![all[3]],
        Preset::All => all.to_vec(),
    }
}

fn parse_exponent(s: &str) -> Result<metcalfe_core::theory::Exponent, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("bad exponent {s:?}"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("bad exponent {s:?}"))?;
            a / b
        }
        None => s.parse().map_err(|_| format!("bad exponent {s:?}"))?,
    };
    if !v.is_finite() {
        return Err(format!("bad exponent {s:?}"));
    }
    Ok(exact_ratio(v))
}

fn parse_theory(spec: &str) -> Result<AsymptoticOrder, CliError> {
    let (a, b) = spec.split_once(',').unwrap_or((spec, "0"));
    let n_exp = parse_exponent(a).map_err(|m| CliError::usage(format!("--theory: {m}")))?;
    let log_exp = parse_exponent(b).map_err(|m| CliError::usage(format!("--theory: {m}")))?;
    Ok(AsymptoticOrder::theta(n_exp, log_exp))
}

/// Mean value per distinct n, in ascending n.
fn mean_per_n(points: impl IntoIterator<Item = (usize, f64)>) -> Vec<(usize, f64)> {
    let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (n, v) in points {
        by_n.entry(n).or_default().push(v);
    }
    by_n.into_iter().map(|(n, v)| (n, mean_and_stderr(&v).0)).collect()
}

fn read_measurements(path: &Path) -> Result<Vec<(usize, f64)>, CliError> {
    let bytes = read_input(path)?;
    let is_samples = bytes.starts_with(b"n,seed,");
    let pts: Vec<(usize, f64)> = if is_samples {
        read_samples_csv(bytes.as_slice())?.into_iter().map(|s| (s.n, s.total_load)).collect()
    } else {
        read_series_csv(bytes.as_slice())?
            .into_iter()
            .map(|(n, v)| {
                if n.fract() != 0.0 || n < 1.0 {
                    Err(CliError::data(format!("n must be a positive integer, got {n}")))
                } else {
                    Ok((n as usize, v))
                }
            })
            .collect::<Result<_, _>>()?
    };
    Ok(mean_per_n(pts))
}

pub fn scaling(g: &GlobalArgs, a: &ScalingArgs) -> CmdResult {
    if a.tolerance.is_nan() || a.tolerance <= 0.0 {
        return Err(CliError::usage("--tolerance must be positive"));
    }
    let forced = a.theory.as_deref().map(parse_theory).transpose()?;
    let measured = a.from.as_deref().map(read_measurements).transpose()?;
    let ns = match &measured {
        Some(m) => m.iter().map(|p| p.0).collect(),
        None => grid(&a.n_grid)?,
    };
    let mut distinct = ns.clone();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(CliError::usage(format!("scaling needs >= 3 distinct n values, got {}", distinct.len())));
    }
    if a.replicates == 0 {
        return Err(CliError::usage("--replicates must be >= 1"));
    }

    let regimes: Vec<Regime> = match (&measured, a.preset) {
        (Some(_), _) if forced.is_some() => vec![Regime { label: "input".into(), lambda: LambdaClass::Const, params: None }],
        (_, Some(p)) => preset_regimes(p)
            .into_iter()
            .map(|(label, lambda, [i, s, d])| Regime {
                label: label.into(),
                lambda,
                params: Some(ExponentParams::new(i, s, d).expect("preset parameters are valid")),
            })
            .collect(),
        (_, None) => vec![Regime { label: "custom".into(), lambda: a.lambda.into(), params: Some(params(&a.model)?) }],
    };

    // simulations shared by regimes that differ only in lambda
    let mut cache: Vec<([u64; 3], Vec<(usize, f64)>)> = Vec::new();
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for reg in &regimes {
        let values: Vec<(usize, f64)> = match (&measured, reg.params) {
            (Some(m), _) => m.clone(),
            (None, Some(p)) => {
                let key = [p.i.to_bits(), p.s.to_bits(), p.d.to_bits()];
                let emst = match cache.iter().find(|(k, _)| *k == key) {
                    Some((_, v)) => v.clone(),
                    None => {
                        let samples = run_grid(g.seed, &ns, p, LambdaClass::Const, a.replicates)?;
                        let v = mean_per_n(samples.iter().map(|s| (s.n, s.emst_sum)));
                        cache.push((key, v.clone()));
                        v
                    }
                };
                emst.into_iter().map(|(n, e)| (n, lambda_eval(reg.lambda, n) * e)).collect()
            }
            (None, None) => unreachable!("simulated regimes carry parameters"),
        };
        let (theory, law) = match (forced, reg.params) {
            (Some(t), _) => (t, None),
            (None, Some(p)) => (ln_order(reg.lambda, &p)?, Some(classify_law(reg.lambda, &p)?)),
            (None, None) => return Err(CliError::usage("--from without a preset or parameters needs --theory")),
        };
        // labeled laws and explicit theories are treated as tight; other
        // cells are lower bounds, so only the lower side is checked
        let two_sided = forced.is_some() || law.is_some_and(|l| !matches!(l, LawKind::Other(_)));
        let slope = ratio_slope(&values, &theory)?;
        let pass = slope >= -a.tolerance && (!two_sided || slope <= a.tolerance);
        let band = if two_sided {
            format!("[{:.2}, {:.2}]", -a.tolerance, a.tolerance)
        } else {
            format!("[{:.2}, inf)", -a.tolerance)
        };
        let params_text = reg
            .params
            .map(|p| format!(" i={} s={} d={}", p.i, p.s, p.d))
            .unwrap_or_default();
        lines.push(format!(
            "{} lambda={}{} theory={} slope={:+.4} band={} {}",
            reg.label,
            reg.lambda.name(),
            params_text,
            theory,
            slope,
            band,
            if pass { "PASS" } else { "FAIL" }
        ));
        rows.push(json!({
            "regime": reg.label,
            "lambda": reg.lambda.name(),
            "params": reg.params.map(|p| json!({"i": p.i, "s": p.s, "d": p.d})),
            "theory": theory.to_string(),
            "law": law.map(|l| l.name()),
            "slope": slope,
            "two_sided": two_sided,
            "tolerance": a.tolerance,
            "pass": pass,
            "points": values,
        }));
    }

    let mut cfg = vec![
        ("n-grid", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")),
        ("replicates", a.replicates.to_string()),
        ("tolerance", a.tolerance.to_string()),
    ];
    if let Some(t) = &a.theory {
        cfg.push(("theory", t.clone()));
    }
    if let Some(f) = &a.from {
        cfg.push(("from", f.display().to_string()));
    }
    let manifest = RunManifest::new("scaling", snapshot(&cfg), g.seed);
    let text = if g.json {
        serde_json::to_string(&json!({"command": "scaling", "regimes": rows})).expect("json value serializes") + "\n"
    } else {
        lines.join("\n") + "\n"
    };
    emit(a.out.as_deref(), manifest, |w| w.write_all(text.as_bytes()).map_err(|e| CliError::data(e.to_string())))
}

// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct FitArgs {
    /// `n,value` CSV (`-` for stdin).
    pub input: PathBuf,
    /// Output CSV (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn fit(g: &GlobalArgs, a: &FitArgs) -> CmdResult {
    let bytes = read_input(&a.input)?;
    let points = read_series_csv(bytes.as_slice())?;
    let models = rank_models(&points)?;
    let manifest = RunManifest::new("fit", snapshot(&[("input", a.input.display().to_string())]), g.seed);
    if g.json {
        if let Some(path) = &a.out {
            emit(Some(path), manifest, |w| Ok(write_fit_csv(w, &models)?))?;
        }
        print_json(&json!({"command": "fit", "points": points.len(), "models": models}));
        return Ok(());
    }
    emit(a.out.as_deref(), manifest, |w| Ok(write_fit_csv(w, &models)?))
}

// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct GeoArgs {
    /// CSV of `x,y` or, with a `lat,lon` header, degrees (`-` for stdin).
    pub input: PathBuf,
    /// Cells per side.
    #[arg(long, default_value_t = 10)]
    pub grid: usize,
    /// Fixed extent `x_min,x_max,y_min,y_max` (after projection).
    #[arg(long, allow_hyphen_values = true)]
    pub bounds: Option<String>,
    /// Largest coefficient of variation still called uniform.
    #[arg(long, default_value_t = DEFAULT_CV_THRESHOLD)]
    pub cv_threshold: f64,
    /// Summary file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_bounds(s: &str) -> Result<Bounds, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("--bounds: expected 4 numbers, got {s:?}")))?;
    match v.as_slice() {
        &[x_min, x_max, y_min, y_max] if x_min < x_max && y_min < y_max && v.iter().all(|x| x.is_finite()) => {
            Ok(Bounds { x_min, x_max, y_min, y_max })
        }
        _ => Err(CliError::usage(format!("--bounds: expected x_min,x_max,y_min,y_max with min < max, got {s:?}"))),
    }
}

pub fn geo(g: &GlobalArgs, a: &GeoArgs) -> CmdResult {
    if a.grid == 0 {
        return Err(CliError::usage("--grid must be >= 1"));
    }
    if a.cv_threshold.is_nan() || a.cv_threshold < 0.0 {
        return Err(CliError::usage("--cv-threshold must be >= 0"));
    }
    let bounds = a.bounds.as_deref().map(parse_bounds).transpose()?;
    let bytes = read_input(&a.input)?;
    let (kind, raw) = read_geo_csv(bytes.as_slice())?;
    let points = match kind {
        CoordKind::LatLon => project_latlon(&raw),
        CoordKind::Planar => raw,
    };
    let summary = geo_summary(&points, a.grid, bounds)?;
    if summary.is_sparse() {
        eprintln!(
            "warning: {} points for {} cells; the CV is unreliable below one point per cell",
            summary.total,
            a.grid * a.grid
        );
    }
    let uniform = summary.is_uniform(a.cv_threshold);
    let verdict = if uniform { "consistent with uniform (g=0)" } else { "not consistent with uniform" };
    let kind_name = match kind {
        CoordKind::LatLon => "latlon",
        CoordKind::Planar => "planar",
    };
    let mut cfg = vec![
        ("input", a.input.display().to_string()),
        ("grid", a.grid.to_string()),
        ("cv-threshold", a.cv_threshold.to_string()),
    ];
    if let Some(b) = &a.bounds {
        cfg.push(("bounds", b.clone()));
    }
    let manifest = RunManifest::new("geo", snapshot(&cfg), g.seed);
    let text = if g.json {
        serde_json::to_string(&json!({
            "command": "geo",
            "coordinates": kind_name,
            "summary": summary,
            "cv_threshold": a.cv_threshold,
            "uniform": uniform,
            "verdict": verdict,
        }))
        .expect("json value serializes")
            + "\n"
    } else {
        let b = summary.bounds;
        let mut t = format!(
            "coordinates={kind_name}\npoints={}\ngrid={}x{}\nbounds={},{},{},{}\ncv={:.6}\n",
            summary.total, summary.grid, summary.grid, b.x_min, b.x_max, b.y_min, b.y_max, summary.coefficient_of_variation
        );
        for row in summary.counts.chunks(summary.grid).rev() {
            t += &row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
            t.push('\n');
        }
        t + &format!("verdict: {verdict}\n")
    };
    emit(a.out.as_deref(), manifest, |w| w.write_all(text.as_bytes()).map_err(|e| CliError::data(e.to_string())))
}
