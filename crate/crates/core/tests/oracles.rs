//! Independent reference computations checked against the library routes.

use nalgebra::DMatrix;
use pfchain::entanglement::{entropy, schmidt_spectrum, SchmidtModel};
use pfchain::spectra::{
    build_hamiltonian, perturbed_entropy, HamiltonianParams, Model, SparseOperator, Subspace,
};

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

fn sorted_eigs(m: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn dense(op: &SparseOperator) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(op.dim, op.dim);
    for &(r, c, v) in &op.entries {
        m[(r, c)] += v;
    }
    m
}

/// `1/4 sum_i (I + Z Z - X X + Y Y)` on `n` qubits, with `Y Y = -(iY)(iY)`.
fn xxz_chain(n: usize) -> DMatrix<f64> {
    let x = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let z = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let iy = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
    let bond = (DMatrix::identity(4, 4) + kron(&z, &z) - kron(&x, &x) - kron(&iy, &iy)) * 0.25;
    let dim = 1 << n;
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..n - 1 {
        let left = DMatrix::<f64>::identity(1 << i, 1 << i);
        let right = DMatrix::<f64>::identity(1 << (n - i - 2), 1 << (n - i - 2));
        h += kron(&kron(&left, &bond), &right);
    }
    h
}

#[test]
fn d2_matches_xxz() {
    for n in 2..=8 {
        let op = build_hamiltonian(&HamiltonianParams {
            subspace: Subspace::Full,
            ..HamiltonianParams::new(Model::Pf { d: 2 }, n)
        })
        .unwrap();
        let a = sorted_eigs(dense(&op));
        let b = sorted_eigs(xxz_chain(n));
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-10, "N={n}: {x} vs {y}");
        }
    }
}

/// `sum_bonds sum_{c < c'} 1/2 (|cc> - |c'c'>)(<cc| - <c'c'|)` on `d^n` states.
fn projector_sum(d: usize, n: usize) -> DMatrix<f64> {
    let dim = d.pow(n as u32);
    let mut h = DMatrix::zeros(dim, dim);
    let digit = |s: usize, i: usize| (s / d.pow((n - 1 - i) as u32)) % d;
    for s in 0..dim {
        for t in 0..dim {
            let mut v = 0.0;
            for i in 0..n - 1 {
                let rest_equal = (0..n)
                    .filter(|&j| j != i && j != i + 1)
                    .all(|j| digit(s, j) == digit(t, j));
                if !rest_equal {
                    continue;
                }
                let (a, b) = (
                    (digit(s, i), digit(s, i + 1)),
                    (digit(t, i), digit(t, i + 1)),
                );
                if a.0 != a.1 || b.0 != b.1 {
                    continue;
                }
                // each colour pair contributes 1/2 on its two diagonals and -1/2 across
                v += if a.0 == b.0 {
                    0.5 * (d - 1) as f64
                } else {
                    -0.5
                };
            }
            h[(s, t)] = v;
        }
    }
    h
}

#[test]
fn d3_matches_projector_sum() {
    for n in [2, 3, 4] {
        let op = build_hamiltonian(&HamiltonianParams {
            subspace: Subspace::Full,
            ..HamiltonianParams::new(Model::Pf { d: 3 }, n)
        })
        .unwrap();
        let a = sorted_eigs(dense(&op));
        let b = sorted_eigs(projector_sum(3, n));
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-10, "N={n}: {x} vs {y}");
        }
    }
}

fn pf_bits(d: u32, n_sites: usize) -> f64 {
    entropy(&schmidt_spectrum(SchmidtModel::Pf { d }, n_sites).unwrap())
        .unwrap()
        .entropy_bits
}

#[test]
fn d2_entropy_grows_like_half_log() {
    let diffs: Vec<f64> = (10..=500)
        .step_by(10)
        .map(|n| pf_bits(2, 4 * n) - 0.5 * (n as f64 * std::f64::consts::PI / 2.0).log2())
        .collect();
    let (lo, hi) = diffs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
            (a.min(x), b.max(x))
        });
    assert!(hi - lo < 0.05, "spread {lo}..{hi}");
    assert!((diffs[diffs.len() - 1] - diffs[diffs.len() - 2]).abs() < 1e-3);
}

#[test]
fn d3_entropy_scales_like_sqrt() {
    let a = pf_bits(3, 4000) / 4000f64.sqrt();
    let b = pf_bits(3, 8000) / 8000f64.sqrt();
    assert!((a - b).abs() / b < 0.03, "{a} vs {b}");
}

#[test]
fn perturbed_entropy_is_linear_in_delta() {
    for (d, n) in [(3u8, 8usize), (2, 12)] {
        assert!(
            perturbed_entropy(d, n, 0.0, 1 << 20)
                .unwrap()
                .difference
                .abs()
                < 1e-10
        );
        let big = perturbed_entropy(d, n, 1e-3, 1 << 20)
            .unwrap()
            .difference
            .abs();
        let small = perturbed_entropy(d, n, 1e-4, 1 << 20)
            .unwrap()
            .difference
            .abs();
        assert!((small / big - 0.1).abs() < 0.01, "d={d}: {small} / {big}");
    }
}

#[test]
fn schmidt_normalisation_exact() {
    for n in (4..=64).step_by(4) {
        assert!(schmidt_spectrum(SchmidtModel::Pf { d: 3 }, n)
            .unwrap()
            .is_normalized());
    }
}
