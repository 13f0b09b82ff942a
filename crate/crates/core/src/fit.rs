//! Least-squares fits of the four law shapes to `(n, value)` series.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::compensated_sum;
use crate::theory::LawKind;

/// Adjusted R^2 values closer than this are treated as equal when ranking.
const RANK_TIE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisFn {
    Cube,
    Square,
    NLogN,
    Linear,
    Constant,
}

impl BasisFn {
    pub fn eval(self, n: f64) -> f64 {
        match self {
            BasisFn::Cube => n * n * n,
            BasisFn::Square => n * n,
            BasisFn::NLogN => n * n.ln(),
            BasisFn::Linear => n,
            BasisFn::Constant => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BasisFn::Cube => "n^3",
            BasisFn::Square => "n^2",
            BasisFn::NLogN => "n*ln(n)",
            BasisFn::Linear => "n",
            BasisFn::Constant => "1",
        }
    }
}

/// The four fitted laws, in the order they are reported.
pub const FIT_LAWS: [LawKind; 4] = [LawKind::Sarnoff, LawKind::Odlyzko, LawKind::Metcalfe, LawKind::Cube];

/// Basis functions of `law`, leading term first.
pub fn basis(law: LawKind) -> Result<&'static [BasisFn]> {
    use BasisFn::*;
    match law {
        LawKind::Sarnoff => Ok(&[Linear, Constant]),
        LawKind::Odlyzko => Ok(&[NLogN, Linear, Constant]),
        LawKind::Metcalfe => Ok(&[Square, Linear, Constant]),
        LawKind::Cube => Ok(&[Cube, Square, Linear, Constant]),
        LawKind::Other(_) => Err(Error::param("only Sarnoff, Odlyzko, Metcalfe and Cube can be fitted")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitModel {
    #[serde(serialize_with = "law_name")]
    pub law: LawKind,
    pub basis: Vec<BasisFn>,
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
    /// `-inf` when there are no residual degrees of freedom.
    pub adj_r_squared: f64,
    pub rmse: f64,
    /// `|B^T r| / |B^T y|` of the final residual.
    pub orthogonality: f64,
}

fn law_name<S: serde::Serializer>(law: &LawKind, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(law.name())
}

impl FitModel {
    pub fn predict(&self, n: f64) -> f64 {
        self.basis.iter().zip(&self.coefficients).map(|(b, c)| c * b.eval(n)).sum()
    }
}

/// Solves the symmetric positive definite system `a x = b` by Cholesky.
fn cholesky_solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let p = b.len();
    let mut l = vec![vec![0.0; p]; p];
    for i in 0..p {
        for j in 0..=i {
            let s = a[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut z = vec![0.0; p];
    for i in 0..p {
        z[i] = (b[i] - (0..i).map(|k| l[i][k] * z[k]).sum::<f64>()) / l[i][i];
    }
    let mut x = vec![0.0; p];
    for i in (0..p).rev() {
        x[i] = (z[i] - (i + 1..p).map(|k| l[k][i] * x[k]).sum::<f64>()) / l[i][i];
    }
    Some(x)
}

fn transpose_times(cols: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    cols.iter().map(|c| compensated_sum(c.iter().zip(v).map(|(a, b)| a * b))).collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Least-squares fit of `law` to `points`.
///
/// Solves the normal equations on max-abs scaled columns, then applies
/// one step of iterative refinement on the residual.
pub fn fit(points: &[(f64, f64)], law: LawKind) -> Result<FitModel> {
    let basis = basis(law)?;
    let p = basis.len();
    let mut distinct: Vec<f64> = points.iter().map(|t| t.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < p {
        return Err(Error::UnderdeterminedFit { distinct: distinct.len(), basis: p });
    }
    for &(n, y) in points {
        if !n.is_finite() || !y.is_finite() {
            return Err(Error::param(format!("non-finite point ({n}, {y})")));
        }
        if basis.contains(&BasisFn::NLogN) && n < 2.0 {
            return Err(Error::param(format!("n ln n basis needs n >= 2, got {n}")));
        }
    }
    let ys: Vec<f64> = points.iter().map(|t| t.1).collect();
    let mut cols: Vec<Vec<f64>> = basis.iter().map(|b| points.iter().map(|t| b.eval(t.0)).collect()).collect();
    let scales: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .map(|m| if m > 0.0 { m } else { 1.0 })
        .collect();
    for (c, s) in cols.iter_mut().zip(&scales) {
        c.iter_mut().for_each(|v| *v /= s);
    }
    let gram: Vec<Vec<f64>> = (0..p)
        .map(|i| (0..p).map(|j| compensated_sum(cols[i].iter().zip(&cols[j]).map(|(a, b)| a * b))).collect())
        .collect();
    let underdetermined = Error::UnderdeterminedFit { distinct: distinct.len(), basis: p };

    let residual = |x: &[f64]| -> Vec<f64> {
        (0..ys.len()).map(|r| ys[r] - compensated_sum((0..p).map(|k| cols[k][r] * x[k]))).collect()
    };
    let bty = transpose_times(&cols, &ys);
    let mut x = cholesky_solve(&gram, &bty).ok_or(underdetermined)?;
    let delta = cholesky_solve(&gram, &transpose_times(&cols, &residual(&x)))
        .ok_or(Error::UnderdeterminedFit { distinct: distinct.len(), basis: p })?;
    x.iter_mut().zip(&delta).for_each(|(a, d)| *a += d);

    let res = residual(&x);
    let bty_norm = norm(&bty);
    let orthogonality = if bty_norm > 0.0 { norm(&transpose_times(&cols, &res)) / bty_norm } else { 0.0 };
    let m = ys.len() as f64;
    let mean = compensated_sum(ys.iter().copied()) / m;
    let sst = compensated_sum(ys.iter().map(|y| (y - mean) * (y - mean)));
    let ssr = compensated_sum(res.iter().map(|r| r * r));
    let r_squared = if sst > 0.0 {
        1.0 - ssr / sst
    } else if ssr <= 1e-24 * compensated_sum(ys.iter().map(|y| y * y)).max(f64::MIN_POSITIVE) {
        // constant data reproduced exactly
        1.0
    } else {
        0.0
    };
    let dof = m - (p as f64 - 1.0) - 1.0;
    let adj_r_squared = if dof > 0.0 { 1.0 - (1.0 - r_squared) * (m - 1.0) / dof } else { f64::NEG_INFINITY };
    let coefficients = x.iter().zip(&scales).map(|(c, s)| c / s).collect();
    Ok(FitModel {
        law,
        basis: basis.to_vec(),
        coefficients,
        r_squared,
        adj_r_squared,
        rmse: (ssr / m).sqrt(),
        orthogonality,
    })
}

/// All four laws, best adjusted R^2 first; near-ties go to the smaller basis.
pub fn rank_models(points: &[(f64, f64)]) -> Result<Vec<FitModel>> {
    let mut pool: Vec<FitModel> = FIT_LAWS.iter().map(|&law| fit(points, law)).collect::<Result<_>>()?;
    let mut ranked = Vec::with_capacity(pool.len());
    while !pool.is_empty() {
        let best = pool.iter().map(|m| m.adj_r_squared).fold(f64::NEG_INFINITY, f64::max);
        let pick = pool
            .iter()
            .enumerate()
            .filter(|(_, m)| m.adj_r_squared >= best - RANK_TIE || m.adj_r_squared == best)
            .min_by_key(|(_, m)| m.basis.len())
            .map(|(k, _)| k)
            .expect("pool nonempty");
        ranked.push(pool.remove(pick));
    }
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn series(ns: impl IntoIterator<Item = u32>, mut f: impl FnMut(f64) -> f64) -> Vec<(f64, f64)> {
        ns.into_iter().map(|n| (n as f64, f(n as f64))).collect()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn exact_linear() {
        let m = fit(&series(1..=10, |n| 2.0 * n + 3.0), LawKind::Sarnoff).unwrap();
        assert!(close(m.coefficients[0], 2.0, 1e-9) && close(m.coefficients[1], 3.0, 1e-9));
        assert!((m.r_squared - 1.0).abs() < 1e-9);
        assert!(m.orthogonality <= 1e-8);
    }

    #[test]
    fn metcalfe_generator() {
        let pts = series((1..=16).map(|k| 10 * k), |n| 0.094 * n * n + 74.65);
        let m = fit(&pts, LawKind::Metcalfe).unwrap();
        let want = [0.094, 0.0, 74.65];
        for (c, w) in m.coefficients.iter().zip(want) {
            assert!(close(*c, w, 1e-6), "{:?}", m.coefficients);
        }
        assert!(m.r_squared >= 1.0 - 1e-12);
    }

    #[test]
    fn exact_cube() {
        let m = fit(&series(1..=12, |n| n * n * n), LawKind::Cube).unwrap();
        for (c, w) in m.coefficients.iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert!(close(*c, w, 1e-9), "{:?}", m.coefficients);
        }
    }

    #[test]
    fn every_basis_recovers_its_coefficients() {
        let cases: [(LawKind, Vec<f64>); 4] = [
            (LawKind::Sarnoff, vec![2.34, -7.5]),
            (LawKind::Odlyzko, vec![0.8, 3.1, 12.0]),
            (LawKind::Metcalfe, vec![0.094, 1.7, 74.65]),
            (LawKind::Cube, vec![0.003, -0.2, 5.0, 40.0]),
        ];
        for (law, coef) in cases {
            let b = basis(law).unwrap();
            let pts = series(2..=200, |n| b.iter().zip(&coef).map(|(f, c)| c * f.eval(n)).sum());
            let m = fit(&pts, law).unwrap();
            for (got, want) in m.coefficients.iter().zip(&coef) {
                assert!((got - want).abs() <= 1e-6 * want.abs(), "{law}: {got} vs {want}");
            }
            assert!(m.r_squared >= 1.0 - 1e-12);
            assert!(m.orthogonality <= 1e-8, "{law}: {}", m.orthogonality);
        }
    }

    #[test]
    fn r_squared_is_scale_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = series(2..=60, |n| 3.0 * n * n + rng.random::<f64>() * 500.0);
        for law in FIT_LAWS {
            let a = fit(&pts, law).unwrap().r_squared;
            let scaled: Vec<_> = pts.iter().map(|&(n, y)| (n, 1234.5 * y)).collect();
            let b = fit(&scaled, law).unwrap().r_squared;
            assert!((a - b).abs() <= 1e-12, "{law}: {a} vs {b}");
        }
    }

    #[test]
    fn small_noise_small_perturbation() {
        // perturbation of each coefficient, measured on its scaled column
        let eps = 1e-3;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for law in FIT_LAWS {
            let b = basis(law).unwrap();
            let coef: Vec<f64> = (0..b.len()).map(|k| 1.0 + k as f64).collect();
            let clean = series(2..=80, |n| b.iter().zip(&coef).map(|(f, c)| c * f.eval(n)).sum());
            let noisy: Vec<_> =
                clean.iter().map(|&(n, y)| (n, y * (1.0 + eps * (2.0 * rng.random::<f64>() - 1.0)))).collect();
            let y_max = clean.iter().fold(0.0f64, |m, p| m.max(p.1.abs()));
            let m = fit(&noisy, law).unwrap();
            for (k, f) in b.iter().enumerate() {
                let col_max = clean.iter().fold(0.0f64, |acc, p| acc.max(f.eval(p.0).abs()));
                let shift = (m.coefficients[k] - coef[k]).abs() * col_max;
                assert!(shift <= 10.0 * eps * y_max, "{law} term {}: {shift}", f.label());
            }
        }
    }

    #[test]
    fn underdetermined() {
        let pts = [(3.0, 1.0), (3.0, 2.0), (4.0, 5.0)];
        assert!(matches!(fit(&pts, LawKind::Metcalfe), Err(Error::UnderdeterminedFit { distinct: 2, basis: 3 })));
        assert!(matches!(fit(&[], LawKind::Sarnoff), Err(Error::UnderdeterminedFit { .. })));
        assert!(fit(&pts, LawKind::Other(crate::theory::AsymptoticOrder::one())).is_err());
        assert!(fit(&[(1.0, 0.0), (2.0, 1.0), (3.0, 2.0)], LawKind::Odlyzko).is_err());
    }

    #[test]
    fn ranking_prefers_generating_model() {
        let ranked = rank_models(&series(2..=50, |n| 5.0 * n)).unwrap();
        assert_eq!(ranked[0].law, LawKind::Sarnoff);
        let ranked = rank_models(&series(1..=200, |n| 0.01 * n * n * n + n).into_iter().filter(|p| p.0 >= 2.0).collect::<Vec<_>>()).unwrap();
        assert_eq!(ranked[0].law, LawKind::Cube);
        assert_eq!(ranked.len(), 4);
    }

    #[test]
    fn constant_data() {
        let ranked = rank_models(&series(2..=20, |_| 7.5)).unwrap();
        for m in &ranked {
            assert!(m.rmse < 1e-9, "{}: {}", m.law, m.rmse);
            assert!(m.coefficients[..m.coefficients.len() - 1].iter().all(|c| c.abs() < 1e-9));
            assert_eq!(m.r_squared, 1.0);
        }
        assert_eq!(ranked[0].law, LawKind::Sarnoff);
    }
}
