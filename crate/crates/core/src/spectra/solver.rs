//! Lowest eigenpairs of real symmetric operators: dense below a threshold,
//! thick-restart Lanczos with full reorthogonalization above.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{rngs::StdRng, Rng, SeedableRng};

use crate::error::{Error, Result};

/// Anything that can apply a real symmetric matrix to a vector.
pub trait SymOp {
    fn dim(&self) -> usize;
    /// `y = A x`
    fn apply(&self, x: &[f64], y: &mut [f64]);
    fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        let mut y = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            self.apply(&e, &mut y);
            for i in 0..n {
                m[(i, j)] = y[i];
            }
            e[j] = 0.0;
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dense,
    Lanczos,
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub dense_threshold: usize,
    pub want_vectors: bool,
    /// Target for `‖Av - λv‖`.
    pub tol: f64,
    /// Largest Krylov basis kept between restarts.
    pub max_basis: usize,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            dense_threshold: 2000,
            want_vectors: false,
            tol: 1e-8,
            max_basis: 160,
            max_restarts: 400,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LowSpectrum {
    /// Ascending.
    pub values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub vectors: Option<Vec<Vec<f64>>>,
    pub method: Method,
}

impl LowSpectrum {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn residual(op: &dyn SymOp, lambda: f64, v: &[f64]) -> f64 {
    let mut y = vec![0.0; v.len()];
    op.apply(v, &mut y);
    axpy(-lambda, v, &mut y);
    norm(&y)
}

/// The `m` lowest eigenvalues, ascending.
pub fn low_spectrum(op: &dyn SymOp, m: usize, opts: &SolverOptions) -> Result<LowSpectrum> {
    let n = op.dim();
    if m == 0 || m > n {
        return Err(Error::BadModelParams(format!(
            "asked for {m} eigenvalues of a {n}-dim operator"
        )));
    }
    if n < opts.dense_threshold {
        dense(op, m, opts)
    } else {
        lanczos(op, m, opts)
    }
}

fn dense(op: &dyn SymOp, m: usize, opts: &SolverOptions) -> Result<LowSpectrum> {
    let a = op.to_dense();
    let eig = SymmetricEigen::new(a);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let mut values = Vec::with_capacity(m);
    let mut residuals = Vec::with_capacity(m);
    let mut vectors = Vec::new();
    for &i in order.iter().take(m) {
        let v: Vec<f64> = eig.eigenvectors.column(i).iter().cloned().collect();
        values.push(eig.eigenvalues[i]);
        residuals.push(residual(op, eig.eigenvalues[i], &v));
        if opts.want_vectors {
            vectors.push(v);
        }
    }
    Ok(LowSpectrum {
        values,
        residuals,
        vectors: opts.want_vectors.then_some(vectors),
        method: Method::Dense,
    })
}

/// Orthogonalizes `w` against `basis` twice; returns the summed coefficients.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let mut h = vec![0.0; basis.len()];
    for _ in 0..2 {
        for (i, v) in basis.iter().enumerate() {
            let c = dot(v, w);
            h[i] += c;
            axpy(-c, v, w);
        }
    }
    h
}

fn random_unit(rng: &mut StdRng, basis: &[Vec<f64>], n: usize) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        orthogonalize(basis, &mut v);
        let nv = norm(&v);
        if nv > 1e-8 {
            v.iter_mut().for_each(|x| *x /= nv);
            return v;
        }
    }
}

fn lanczos(op: &dyn SymOp, m: usize, opts: &SolverOptions) -> Result<LowSpectrum> {
    let n = op.dim();
    let mmax = opts.max_basis.max(2 * m + 20).min(n);
    let keep = (m + 8).min(mmax - 1).max(m);
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut basis: Vec<Vec<f64>> = vec![random_unit(&mut rng, &[], n)];
    let mut h = DMatrix::<f64>::zeros(mmax, mmax);
    let mut w = vec![0.0; n];
    let mut best_res = f64::INFINITY;
    for _restart in 0..=opts.max_restarts {
        let mut beta = 0.0;
        let mut resid = vec![0.0; n];
        let start = basis.len() - 1;
        for j in start..mmax {
            op.apply(&basis[j], &mut w);
            let c = orthogonalize(&basis, &mut w);
            for (i, ci) in c.iter().enumerate() {
                h[(i, j)] = *ci;
                h[(j, i)] = *ci;
            }
            beta = norm(&w);
            if j + 1 == mmax {
                resid.copy_from_slice(&w);
                break;
            }
            if beta < 1e-12 * (1.0 + h[(j, j)].abs()) {
                // invariant subspace found; continue with a fresh direction
                let v = random_unit(&mut rng, &basis, n);
                basis.push(v);
                h[(j + 1, j)] = 0.0;
                h[(j, j + 1)] = 0.0;
            } else {
                basis.push(w.iter().map(|x| x / beta).collect());
                h[(j + 1, j)] = beta;
                h[(j, j + 1)] = beta;
            }
        }
        let k = basis.len();
        let eig = SymmetricEigen::new(h.view((0, 0), (k, k)).into_owned());
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
        let est: Vec<f64> = order
            .iter()
            .take(m)
            .map(|&i| (beta * eig.eigenvectors[(k - 1, i)]).abs())
            .collect();
        let worst = est.iter().cloned().fold(0.0, f64::max);
        best_res = best_res.min(worst);
        let ritz = |cols: &[usize]| -> Vec<Vec<f64>> {
            cols.iter()
                .map(|&c| {
                    let mut v = vec![0.0; n];
                    for (i, b) in basis.iter().enumerate() {
                        axpy(eig.eigenvectors[(i, c)], b, &mut v);
                    }
                    v
                })
                .collect()
        };
        if worst <= opts.tol * 0.1 || k == n {
            let vecs = ritz(&order[..m]);
            let values: Vec<f64> = order[..m].iter().map(|&i| eig.eigenvalues[i]).collect();
            let residuals: Vec<f64> = values
                .iter()
                .zip(&vecs)
                .map(|(&l, v)| residual(op, l, v))
                .collect();
            let worst_true = residuals.iter().cloned().fold(0.0, f64::max);
            if worst_true <= opts.tol || k == n {
                return Ok(LowSpectrum {
                    values,
                    residuals,
                    vectors: opts.want_vectors.then_some(vecs),
                    method: Method::Lanczos,
                });
            }
        }
        // thick restart: keep the lowest Ritz vectors plus the residual direction
        let kept: Vec<usize> = order[..keep].to_vec();
        let new_basis = ritz(&kept);
        h.fill(0.0);
        for (a, &c) in kept.iter().enumerate() {
            h[(a, a)] = eig.eigenvalues[c];
            let s = beta * eig.eigenvectors[(k - 1, c)];
            h[(a, keep)] = s;
            h[(keep, a)] = s;
        }
        basis = new_basis;
        let nr = norm(&resid);
        if nr < 1e-14 {
            let v = random_unit(&mut rng, &basis, n);
            basis.push(v);
        } else {
            let mut r: Vec<f64> = resid.iter().map(|x| x / nr).collect();
            orthogonalize(&basis, &mut r);
            let nr2 = norm(&r);
            basis.push(r.iter().map(|x| x / nr2).collect());
        }
    }
    Err(Error::ConvergenceFailure { residual: best_res })
}

/// `lambda_1 - lambda_0`, where `lambda_1` is the lowest value above
/// `lambda_0 + 1e-10`.
pub fn spectral_gap(values: &[f64]) -> Option<f64> {
    let l0 = *values.first()?;
    values.iter().find(|&&x| x > l0 + 1e-10).map(|x| x - l0)
}

/// Least-squares slope of `ln y` against `ln x`, its standard error and the intercept.
pub fn power_law_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() < 3 || xs.len() != ys.len() {
        return Err(Error::BadModelParams(
            "power-law fit needs at least 3 points".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let stderr = (sse / (k - 2.0) / sxx).sqrt();
    Ok((slope, stderr, intercept))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Diag(Vec<f64>);
    impl SymOp for Diag {
        fn dim(&self) -> usize {
            self.0.len()
        }
        fn apply(&self, x: &[f64], y: &mut [f64]) {
            for i in 0..x.len() {
                y[i] = self.0[i] * x[i];
            }
        }
    }

    /// Path-graph Laplacian, eigenvalues `2 - 2cos(pi j / n)`.
    struct PathLap(usize);
    impl SymOp for PathLap {
        fn dim(&self) -> usize {
            self.0
        }
        fn apply(&self, x: &[f64], y: &mut [f64]) {
            let n = self.0;
            for i in 0..n {
                let mut s = 0.0;
                if i > 0 {
                    s += x[i] - x[i - 1];
                }
                if i + 1 < n {
                    s += x[i] - x[i + 1];
                }
                y[i] = s;
            }
        }
    }

    #[test]
    fn scaled_identity() {
        let op = Diag(vec![3.0; 50]);
        let s = low_spectrum(&op, 3, &SolverOptions::default()).unwrap();
        assert!(s.values.iter().all(|v| (v - 3.0).abs() < 1e-12));
        let op = Diag((0..3000).map(|i| 2.0 + i as f64).collect());
        let s = low_spectrum(&op, 4, &SolverOptions::default()).unwrap();
        assert_eq!(s.method, Method::Lanczos);
        for (i, v) in s.values.iter().enumerate() {
            assert!((v - (2.0 + i as f64)).abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn lanczos_matches_closed_form() {
        let n = 2500;
        let s = low_spectrum(
            &PathLap(n),
            3,
            &SolverOptions {
                max_restarts: 4000,
                ..Default::default()
            },
        )
        .unwrap();
        for (j, v) in s.values.iter().enumerate() {
            let want = 2.0 - 2.0 * (std::f64::consts::PI * j as f64 / n as f64).cos();
            assert!((v - want).abs() < 1e-9, "{j} {v} {want}");
        }
        assert!(s.max_residual() <= 1e-8);
    }

    #[test]
    fn dense_and_lanczos_agree() {
        let op = PathLap(300);
        let a = low_spectrum(&op, 4, &SolverOptions::default()).unwrap();
        let b = low_spectrum(
            &op,
            4,
            &SolverOptions {
                dense_threshold: 0,
                ..Default::default()
            },
        )
        .unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn fit_exact_power() {
        let xs = [4.0, 6.0, 8.0, 10.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 5.0 * x.powf(-2.5)).collect();
        let (s, e, _) = power_law_fit(&xs, &ys).unwrap();
        assert!((s + 2.5).abs() < 1e-12 && e < 1e-10);
        assert_eq!(spectral_gap(&[0.0, 1e-12, 0.5]), Some(0.5));
    }
}
