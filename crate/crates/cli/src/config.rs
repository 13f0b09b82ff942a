//! Flat `key = value` config files and grid parsing.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

/// Parsed config: ordered `(key, value)` pairs.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(|msg| CliError::usage(format!("{}: {msg}", path.display())))
}

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", k + 1))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(format!("line {}: empty key", k + 1));
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

/// Finds `--config PATH` (or `--config=PATH`) anywhere in `args`.
pub fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Inserts config entries as flags right after the subcommand so that
/// flags given on the command line, which come later, override them.
pub fn splice_config(args: Vec<OsString>, entries: &[(String, String)], subcommands: &[&str]) -> Vec<OsString> {
    let Some(pos) = args.iter().skip(1).position(|a| subcommands.iter().any(|s| a == *s)) else {
        return args;
    };
    let at = pos + 2;
    let mut injected = Vec::new();
    for (key, value) in entries {
        let bool_flag = matches!(key.as_str(), "json");
        if bool_flag {
            if matches!(value.to_ascii_lowercase().as_str(), "true" | "1" | "yes") {
                injected.push(OsString::from(format!("--{key}")));
            }
        } else {
            injected.push(OsString::from(format!("--{key}={value}")));
        }
    }
    let mut out = args[..at].to_vec();
    out.extend(injected);
    out.extend_from_slice(&args[at..]);
    out
}

/// `a,b,c` or geometric `start:end:factor` (inclusive end).
pub fn parse_n_grid(spec: &str) -> Result<Vec<usize>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty n-grid".into());
    }
    let grid = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
        let [start, end, factor] = parts.as_slice() else {
            return Err(format!("expected start:end:factor, got {spec:?}"));
        };
        let start: usize = start.parse().map_err(|_| format!("bad start {start:?}"))?;
        let end: usize = end.parse().map_err(|_| format!("bad end {end:?}"))?;
        let factor: usize = factor.parse().map_err(|_| format!("bad factor {factor:?}"))?;
        if factor < 2 || start == 0 {
            return Err("start must be >= 1 and factor >= 2".into());
        }
        let mut v = Vec::new();
        let mut n = start;
        while n <= end {
            v.push(n);
            n = n.checked_mul(factor).ok_or("n-grid overflows")?;
        }
        v
    } else {
        spec.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| format!("bad n value {s:?}")))
            .collect::<Result<_, _>>()?
    };
    if grid.is_empty() {
        return Err("empty n-grid".into());
    }
    Ok(grid)
}
