//! Peak, valley and adjacent-pair statistics for Dyck paths and PF words.
//!
//! Library functions index by `(n, k)` = (reducible pairs, extra letters).
//! The word-count table of Fig. 13 instead uses half the total length
//! `c = n + k/2`; see [`table_column_to_pairs`].

pub mod bivariate;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::counting::{catalan, pf_count, rational_to_f64, table};
use crate::error::{check_size, Error, Result};
use crate::words::{count_pairs, enumerate_subspace, IrreducibleString, SubspaceLabel};

#[derive(Debug, Clone, PartialEq)]
pub struct PairStats {
    pub total: BigUint,
    pub words: BigUint,
    /// `total / words`; zero when there are no words.
    pub average: BigRational,
    pub variance: Option<BigRational>,
}

impl PairStats {
    fn new(total: BigUint, words: BigUint) -> Self {
        let average = if words.is_zero() {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::from(total.clone()), BigInt::from(words.clone()))
        };
        PairStats {
            total,
            words,
            average,
            variance: None,
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_nat(r: &BigRational) -> BigUint {
    assert!(
        r.is_integer() && !r.is_negative(),
        "expected a natural number, got {r}"
    );
    r.to_integer().to_biguint().unwrap()
}

/// Table column `c` (half the total length) to reducible pairs, for even `k`.
pub fn table_column_to_pairs(c: u64, k: u64) -> Option<u64> {
    (k % 2 == 0 && c >= k / 2).then(|| c - k / 2)
}

pub fn pairs_to_table_column(n: u64, k: u64) -> Option<u64> {
    (k % 2 == 0).then(|| n + k / 2)
}

/// `p_{n,k} = (N+2)/4 - k(k+2)/(4N)`, zero for the empty path.
pub fn peak_average(n: u64, k: u64) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let big_n = (2 * n + k) as i64;
    let k = k as i64;
    rat(big_n + 2, 4) - rat(k * (k + 2), 4 * big_n)
}

/// Peaks in `s`-colored paths with `n` pairs and `k` extra steps, all
/// `s^{n+k}` colorings counted.
pub fn dyck_peaks(s: u32, n: u64, k: u64) -> PairStats {
    let words = catalan(n, k, 1) * BigUint::from(s).pow((n + k) as u32);
    let total =
        to_nat(&(peak_average(n, k) * BigRational::from_integer(BigInt::from(words.clone()))));
    PairStats::new(total, words)
}

/// Average of peaks plus same-color valleys, `s` colors.
pub fn peak_valley_average(s: u32, n: u64, k: u64) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let s = s as i64;
    let big_n = (2 * n + k) as i64;
    let k = k as i64;
    rat((s + 1) * big_n + 2 * (s - 1), 4 * s) + rat(2 * k, 4 * s * (k + 1))
        - rat(k * (k + 2) * (k * (s + 1) + s - 1), 4 * s * (k + 1) * big_n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeakValleyStats {
    pub stats: PairStats,
    /// `k` maximizing the average at the same total length.
    pub argmax_k: u64,
}

/// Peaks plus same-color valleys, `s`-colored paths with a fixed coloring
/// of the `k` extra steps (`s^n C_{n,k}` words).
pub fn dyck_peaks_valleys(s: u32, n: u64, k: u64) -> PeakValleyStats {
    let words = catalan(n, k, s);
    let total = to_nat(
        &(peak_valley_average(s, n, k) * BigRational::from_integer(BigInt::from(words.clone()))),
    );
    PeakValleyStats {
        stats: PairStats::new(total, words),
        argmax_k: peak_valley_argmax(s, 2 * n + k),
    }
}

/// The `k` (same parity as `len`) maximizing the peak-plus-valley average.
pub fn peak_valley_argmax(s: u32, len: u64) -> u64 {
    let mut best = (len % 2, peak_valley_average(s, len / 2, len % 2));
    let mut k = len % 2 + 2;
    while k < len {
        let a = peak_valley_average(s, (len - k) / 2, k);
        if a > best.1 {
            best = (k, a);
        }
        k += 2;
    }
    best.0
}

/// Real root of `N = (2k^2 + 5k + 4) k`.
pub fn peak_valley_argmax_root(len: u64) -> f64 {
    let f = |k: f64| (2.0 * k * k + 5.0 * k + 4.0) * k - len as f64;
    let (mut lo, mut hi) = (0.0, (len as f64).cbrt() + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// `tau^{(s)}_i` for `i = 0..=nmax`.
fn tau_table(s: u32, nmax: u64) -> Vec<BigUint> {
    (0..=nmax)
        .map(|i| {
            if i == 0 {
                BigUint::zero()
            } else {
                let c = catalan(i, 0, s);
                let num = c * ((s as u64 + 1) * i + s as u64 - 1);
                crate::counting::exact_div(&num, &BigUint::from(2 * s))
            }
        })
        .collect()
}

/// Total pairs `phi_0..=phi_nmax` over fully reducible words.
pub fn pf_pairs_table(d: u32, nmax: u64) -> Vec<BigUint> {
    let t = table(d);
    let s = d - 1;
    let w: Vec<BigInt> = (0..=nmax + 1).map(|i| BigInt::from(t.w(i))).collect();
    let c: Vec<BigInt> = (0..=nmax).map(|i| BigInt::from(catalan(i, 0, s))).collect();
    let tau: Vec<BigInt> = tau_table(s, nmax).into_iter().map(BigInt::from).collect();
    let dd = BigInt::from(d);
    let mut phi: Vec<BigInt> = vec![BigInt::zero()];
    for n in 0..nmax as usize {
        let head = &w[n + 1] - &dd * &c[n];
        assert!((&head % &dd).is_zero());
        let mut v = &dd * &w[n] + head / &dd;
        let mut acc = BigInt::zero();
        for i in 0..=n {
            acc += &tau[i] * &w[n - i] + &c[i] * &phi[n - i];
        }
        v += acc * &dd;
        phi.push(v);
    }
    phi.into_iter().map(|x| x.to_biguint().unwrap()).collect()
}

/// Pairs over words with `n` reducible pairs reducing to a fixed string of
/// length `k`.
pub fn pf_pairs(d: u32, n: u64, k: u64) -> PairStats {
    let phi = pf_pairs_table(d, n);
    pf_pairs_with_table(d, n, k, &phi)
}

/// As [`pf_pairs`], reusing `phi` (which must cover index `n`).
pub fn pf_pairs_with_table(d: u32, n: u64, k: u64, phi: &[BigUint]) -> PairStats {
    let words = pf_count(d, n, k);
    if k == 0 {
        return PairStats::new(phi[n as usize].clone(), words);
    }
    let s = d - 1;
    let t = table(d);
    let tau = tau_table(s, n);
    let mut total = BigRational::zero();
    let one_over_d = rat(1, d as i64);
    let km1 = rat(k as i64 - 1, s as i64);
    for i in 1..=n {
        let cnk = BigRational::from_integer(BigInt::from(catalan(n - i, k - 1, s)));
        let wnk = BigRational::from_integer(BigInt::from(t.wk(n - i, k - 1)));
        let phi_i = BigRational::from_integer(BigInt::from(phi[i as usize].clone()));
        let w_i = BigRational::from_integer(BigInt::from(t.w(i)));
        let tau_i = BigRational::from_integer(BigInt::from(tau[i as usize].clone()));
        let c_i = BigRational::from_integer(BigInt::from(catalan(i, 0, s)));
        total += &phi_i * &cnk + &one_over_d * &w_i * &cnk;
        total += BigRational::from_integer(BigInt::from(k)) * &tau_i * &wnk + &km1 * &c_i * &wnk;
    }
    PairStats::new(to_nat(&total), words)
}

/// `f_{n,k} = N/2 - k^2/(2N)` for `d = 2`.
pub fn d2_pair_average(n: u64, k: u64) -> BigRational {
    if n + k == 0 {
        return BigRational::zero();
    }
    let big_n = (2 * n + k) as i64;
    rat(big_n, 2) - rat((k * k) as i64, 2 * big_n)
}

/// Exact variance of the pair count from the second-order expansion.
pub fn pf_pair_variance(d: u32, n: u64, k: u64) -> BigRational {
    let s = bivariate::pf_pairs_gf_k(d, k as u32, n as usize, 2);
    let p = &s.coeffs[n as usize];
    bivariate::moments(&p.coeff(0), &p.coeff(1), &p.coeff(2)).1
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairAsymptotics {
    pub avg_estimate: f64,
    pub variance_estimate: f64,
    /// `<#>_0 - <#>_k` at the same half-length `n`.
    pub subspace_gap: f64,
    /// `subspace_gap * n / k^2` (zero for `k = 0`).
    pub rescaled_gap: f64,
    /// False outside the constant-`k` regime (`k > 8`).
    pub certified: bool,
}

fn avg_expansion(n: f64, k: f64) -> f64 {
    0.75 * n + 0.75 - 3.0 * (k.powi(3) + 9.0 * k * k + 50.0 * k + 144.0) / (16.0 * (k + 3.0) * n)
}

/// Large-`n` estimates for `d = 3`; `n` is half the total length.
pub fn pf_pair_asymptotics(d: u32, n: u64, k: u64) -> Result<PairAsymptotics> {
    if d != 3 {
        return Err(Error::BadModelParams("the expansion is for d = 3".into()));
    }
    if n == 0 {
        return Err(Error::BadModelParams("n must be positive".into()));
    }
    let (nf, kf) = (n as f64, k as f64);
    let avg = avg_expansion(nf, kf);
    let gap = avg_expansion(nf, 0.0) - avg;
    Ok(PairAsymptotics {
        avg_estimate: avg,
        variance_estimate: 13.0 * nf / 32.0 + 1.0 / 64.0,
        subspace_gap: gap,
        rescaled_gap: if k == 0 { 0.0 } else { gap * nf / (kf * kf) },
        certified: k <= 8,
    })
}

/// Exact `(<#>_0 - <#>_k) n / k^2` at half-length `n` (even `k >= 2`).
pub fn rescaled_subspace_gap(d: u32, n: u64, k: u64, phi: &[BigUint]) -> Result<f64> {
    let m = table_column_to_pairs(n, k)
        .ok_or_else(|| Error::BadParity("k must be even and at most 2n".into()))?;
    if k == 0 {
        return Ok(0.0);
    }
    let f0 = pf_pairs_with_table(d, n, 0, phi).average;
    let fk = pf_pairs_with_table(d, m, k, phi).average;
    Ok(rational_to_f64(
        &((f0 - fk) * rat(n as i64, (k * k) as i64)),
    ))
}

/// Brute-force histogram over the subspace with the canonical `k`-letter string.
pub fn pair_histogram(
    d: u32,
    n_sites: usize,
    k: usize,
    limit: u128,
) -> Result<BTreeMap<usize, BigUint>> {
    if n_sites == 0 {
        return Ok(BTreeMap::from([(0, BigUint::one())]));
    }
    let label = SubspaceLabel::new(n_sites, IrreducibleString::canonical(d as u8, k))?;
    let words = enumerate_subspace(&label, limit)?;
    let mut h = BTreeMap::new();
    for w in &words {
        *h.entry(count_pairs(w)).or_insert_with(BigUint::zero) += 1u32;
    }
    Ok(h)
}

/// Histogram from the full bivariate expansion; feasible for lengths ~100.
pub fn pair_histogram_bogf(
    d: u32,
    n_sites: usize,
    k: usize,
    limit: u128,
) -> Result<BTreeMap<usize, BigUint>> {
    if k > n_sites || (n_sites - k) % 2 != 0 {
        return Err(Error::BadParity(format!(
            "N - k = {} - {k} must be even and non-negative",
            n_sites
        )));
    }
    check_size("histogram length", n_sites as u128, limit)?;
    let n = (n_sites - k) / 2;
    let s = bivariate::bivariate_series(bivariate::Bogf::PFP { d }, k as u32, n);
    Ok(bivariate::histogram_at(&s, n))
}

/// Exact mean and variance of a histogram.
pub fn histogram_moments(h: &BTreeMap<usize, BigUint>) -> (BigRational, BigRational) {
    let c0: BigUint = h.values().sum();
    let c1: BigUint = h.iter().map(|(p, c)| c * *p).sum();
    let c2: BigUint = h
        .iter()
        .map(|(p, c)| c * (*p * p.saturating_sub(1) / 2))
        .sum();
    bivariate::moments(&BigInt::from(c0), &BigInt::from(c1), &BigInt::from(c2))
}

/// Convenience for callers that want floats.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| rational_to_f64(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> BigUint {
        BigUint::from(v)
    }

    const K0: [u64; 10] = [
        0, 3, 27, 225, 1827, 14661, 116919, 929097, 7367355, 58343949,
    ];
    const K2: [u64; 10] = [0, 0, 9, 105, 987, 8613, 72567, 599625, 4896315, 39673869];
    const K4: [u64; 10] = [0, 0, 0, 15, 231, 2565, 25047, 228969, 2013435, 17269773];

    #[test]
    fn fig13_pairs() {
        for (k, row) in [(0u64, K0), (2, K2), (4, K4)] {
            for (c, &v) in row.iter().enumerate() {
                let got = match table_column_to_pairs(c as u64, k) {
                    Some(n) => pf_pairs(3, n, k).total,
                    None => BigUint::zero(),
                };
                assert_eq!(got, nat(v), "k={k} column {c}");
            }
        }
    }

    #[test]
    fn peak_examples() {
        assert_eq!(dyck_peaks(1, 3, 0).total, nat(10));
        for n in 1..20 {
            assert_eq!(dyck_peaks(1, n, 0).average, rat(n as i64 + 1, 2));
        }
        assert_eq!(dyck_peaks(2, 2, 1).average, rat(8, 5));
        assert_eq!(dyck_peaks(1, 0, 3).total, nat(0));
    }

    #[test]
    fn peak_valley_examples() {
        for n in 0..20 {
            assert_eq!(
                dyck_peaks_valleys(1, n, 0).stats.total,
                catalan(n, 0, 1) * n
            );
        }
        assert_eq!(dyck_peaks_valleys(2, 3, 0).stats.total, nat(100));
        assert_eq!(dyck_peaks_valleys(1, 0, 0).stats.total, nat(0));
    }

    #[test]
    fn pf_pair_examples() {
        assert_eq!(
            pf_pairs(3, table_column_to_pairs(3, 2).unwrap(), 2).total,
            nat(105)
        );
        for n in 0..30 {
            let p = pf_pairs(2, n, 0);
            assert_eq!(p.average, rat(n as i64, 1));
        }
    }

    #[test]
    fn asymptotic_examples() {
        let a = pf_pair_asymptotics(3, 1_000_000, 0).unwrap();
        assert!((a.avg_estimate - (0.75e6 + 0.75)).abs() < 1e-4);
        let g = pf_pair_asymptotics(3, 500, 2).unwrap();
        assert!((g.rescaled_gap - 0.45).abs() < 1e-12);
    }

    #[test]
    fn histogram_examples() {
        let h = pair_histogram(2, 4, 0, 1000).unwrap();
        let total: BigUint = h.iter().map(|(p, c)| c * *p).sum();
        assert_eq!(total, nat(12));
        assert_eq!(h.values().sum::<BigUint>(), nat(6));
        let h = pair_histogram(3, 4, 0, 1000).unwrap();
        assert_eq!(h.values().sum::<BigUint>(), nat(15));
        assert_eq!(h.iter().map(|(p, c)| c * *p).sum::<BigUint>(), nat(27));
        assert_eq!(
            pair_histogram(3, 0, 0, 1).unwrap(),
            BTreeMap::from([(0, nat(1))])
        );
    }

    #[test]
    fn bogf_examples() {
        use bivariate::*;
        let s = bivariate_series(Bogf::PFP { d: 3 }, 0, 6);
        let words: Vec<i64> = s.marginal().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(words, [1, 3, 15, 87, 543, 3543, 23823]);
        let pairs: Vec<i64> = s
            .first_moment()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(&pairs[1..5], &[3, 27, 225, 1827]);
        let v = bivariate_series(Bogf::V { s: 1 }, 0, 8);
        let c: Vec<i64> = v.marginal().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42, 132, 429, 1430]);
    }

    #[test]
    fn histogram_routes_agree() {
        for (d, n_sites, k) in [(3, 8, 0), (3, 8, 2), (2, 10, 2), (4, 6, 2)] {
            let a = pair_histogram(d, n_sites, k, 1 << 20).unwrap();
            let b = pair_histogram_bogf(d, n_sites, k, 1000).unwrap();
            assert_eq!(a, b, "d={d} N={n_sites} k={k}");
            let (mean, var) = histogram_moments(&a);
            let n = ((n_sites - k) / 2) as u64;
            assert_eq!(mean, pf_pairs(d, n, k as u64).average);
            assert_eq!(var, pf_pair_variance(d, n, k as u64));
        }
    }
}
