//! Floating-point evidence that a tuple of quadratic forms cuts out a
//! nonsingular complete intersection. This is a heuristic: it never proves
//! anything and its output is diagnostic only.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};

use crate::error::{domain, Error, Result};
use crate::quadratic::QuadraticForm;
use crate::rational::to_f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// Every located zero has a well-conditioned Jacobian.
    LikelyNonsingular,
    /// Some located zero has a Jacobian with a tiny singular value.
    SingularSuspected,
    /// No real zero was located.
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub zeros_found: usize,
    /// Smallest Jacobian singular value over the located zeros, on the unit
    /// sphere.
    pub min_singular_value: Option<f64>,
    pub verdict: ProbeVerdict,
}

const MAX_ITERS: usize = 200;
const RESIDUAL_TOL: f64 = 1e-15;

/// Looks for common real zeros of `forms` on the unit sphere by Gauss-Newton
/// from `samples` seeded random starts, then measures how close the
/// Jacobian of the forms is to losing rank at each zero found.
pub fn ci_probe(forms: &[QuadraticForm], samples: usize, seed: u64, tol: f64) -> Result<ProbeReport> {
    let first = forms.first().ok_or_else(|| domain("need at least one form"))?;
    let n = first.vars();
    if let Some(f) = forms.iter().find(|f| f.vars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.vars(),
        });
    }
    let mats: Vec<Vec<f64>> = forms
        .iter()
        .map(|f| f.matrix().iter().flatten().map(to_f64).collect())
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut zeros = 0;
    let mut min_sv: Option<f64> = None;
    for _ in 0..samples {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        normalize(&mut x);
        if let Some(z) = newton(&mats, n, x) {
            zeros += 1;
            let sv = min_singular_value(&gradients(&mats, n, &z));
            min_sv = Some(min_sv.map_or(sv, |m: f64| m.min(sv)));
        }
    }
    let verdict = match min_sv {
        None => ProbeVerdict::Unknown,
        Some(s) if s > tol => ProbeVerdict::LikelyNonsingular,
        Some(_) => ProbeVerdict::SingularSuspected,
    };
    Ok(ProbeReport {
        zeros_found: zeros,
        min_singular_value: min_sv,
        verdict,
    })
}

fn normalize(x: &mut [f64]) {
    let norm = libm::sqrt(x.iter().map(|v| v * v).sum());
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

fn mat_vec(m: &[f64], n: usize, x: &[f64]) -> Vec<f64> {
    (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * x[j]).sum())
        .collect()
}

/// Rows are the gradients `2 M_i x`.
fn gradients(mats: &[Vec<f64>], n: usize, x: &[f64]) -> Vec<Vec<f64>> {
    mats.iter()
        .map(|m| mat_vec(m, n, x).into_iter().map(|v| 2.0 * v).collect())
        .collect()
}

/// Minimum-norm Gauss-Newton on `(Q_1, ..., Q_j, |x|^2 - 1) = 0`.
fn newton(mats: &[Vec<f64>], n: usize, mut x: Vec<f64>) -> Option<Vec<f64>> {
    for _ in 0..MAX_ITERS {
        let mut f: Vec<f64> = mats
            .iter()
            .map(|m| x.iter().zip(mat_vec(m, n, &x)).map(|(a, b)| a * b).sum())
            .collect();
        f.push(x.iter().map(|v| v * v).sum::<f64>() - 1.0);
        let res = libm::sqrt(f.iter().map(|v| v * v).sum());
        if res <= RESIDUAL_TOL {
            return Some(x);
        }
        let mut jac = gradients(mats, n, &x);
        jac.push(x.iter().map(|v| 2.0 * v).collect());
        // solve (J J^T) y = f, step = J^T y
        let rows = jac.len();
        let mut g = vec![vec![0.0; rows]; rows];
        for a in 0..rows {
            for b in 0..rows {
                g[a][b] = jac[a].iter().zip(&jac[b]).map(|(p, q)| p * q).sum();
            }
        }
        let y = solve(g, f)?;
        for (i, xi) in x.iter_mut().enumerate() {
            *xi -= (0..rows).map(|a| jac[a][i] * y[a]).sum::<f64>();
        }
        if x.iter().any(|v| !v.is_finite()) {
            return None;
        }
    }
    None
}

/// Gaussian elimination with partial pivoting; `None` when (numerically)
/// singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() <= 1e-300 + scale * 1e-30 {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = (c + 1..n).map(|k| a[c][k] * x[k]).sum();
        x[c] = (b[c] - s) / a[c][c];
    }
    Some(x)
}

/// Smallest singular value of a `j x n` matrix (`j <= n`) via the
/// eigenvalues of `J J^T` from cyclic Jacobi rotations.
fn min_singular_value(rows: &[Vec<f64>]) -> f64 {
    let j = rows.len();
    let mut g = vec![vec![0.0; j]; j];
    for a in 0..j {
        for b in 0..j {
            g[a][b] = rows[a].iter().zip(&rows[b]).map(|(p, q)| p * q).sum();
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..j)
            .flat_map(|a| (0..j).filter(move |&b| b != a).map(move |b| (a, b)))
            .map(|(a, b)| g[a][b] * g[a][b])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..j {
            for q in p + 1..j {
                if g[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (g[q][q] - g[p][p]) / (2.0 * g[p][q]);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..j {
                    let (gkp, gkq) = (g[k][p], g[k][q]);
                    g[k][p] = c * gkp - s * gkq;
                    g[k][q] = s * gkp + c * gkq;
                }
                for k in 0..j {
                    let (gpk, gqk) = (g[p][k], g[q][k]);
                    g[p][k] = c * gpk - s * gqk;
                    g[q][k] = s * gpk + c * gqk;
                }
            }
        }
    }
    let min_eig = (0..j).map(|a| g[a][a]).fold(f64::INFINITY, f64::min);
    libm::sqrt(min_eig.max(0.0))
}
