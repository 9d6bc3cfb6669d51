//! Bivariate generating functions in `(u, z)` for peaks, valleys and pairs.
//!
//! Coefficients in `u` are stored in the shifted variable `e = u - 1`, so a
//! cap on the `e`-degree keeps exactly the low-order derivatives at `u = 1`.
//! `z` marks one reducible pair; extra steps carry no `z`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::counting::binomial;

/// Polynomial in `e = u - 1`, truncated above degree `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EPoly {
    pub c: Vec<BigInt>,
    pub cap: usize,
}

impl EPoly {
    fn zero(cap: usize) -> Self {
        EPoly { c: Vec::new(), cap }
    }

    fn constant(v: i64, cap: usize) -> Self {
        EPoly {
            c: vec![BigInt::from(v)],
            cap,
        }
        .trim()
    }

    /// `u = 1 + e`.
    fn u(cap: usize) -> Self {
        let mut c = vec![BigInt::one()];
        if cap >= 1 {
            c.push(BigInt::one());
        }
        EPoly { c, cap }
    }

    /// `u + s - 1 = s + e`.
    fn u_plus(s: i64, cap: usize) -> Self {
        let mut c = vec![BigInt::from(s)];
        if cap >= 1 {
            c.push(BigInt::one());
        }
        EPoly { c, cap }.trim()
    }

    fn trim(mut self) -> Self {
        self.c.truncate(self.cap + 1);
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        self
    }

    pub fn coeff(&self, j: usize) -> BigInt {
        self.c.get(j).cloned().unwrap_or_default()
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|j| self.coeff(j) + o.coeff(j)).collect();
        EPoly { c, cap: self.cap }.trim()
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|j| self.coeff(j) - o.coeff(j)).collect();
        EPoly { c, cap: self.cap }.trim()
    }

    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero(self.cap);
        }
        let n = (self.c.len() + o.c.len() - 1).min(self.cap + 1);
        let mut c = vec![BigInt::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                if i + j < n {
                    c[i + j] += a * b;
                }
            }
        }
        EPoly { c, cap: self.cap }.trim()
    }

    fn scale(&self, v: i64) -> Self {
        EPoly {
            c: self.c.iter().map(|x| x * v).collect(),
            cap: self.cap,
        }
        .trim()
    }

    /// `(u + s - 1)/s * self = self + e*self/s`, exact.
    fn match_factor(&self, s: i64) -> Self {
        let mut c = self.c.clone();
        c.push(BigInt::zero());
        for j in (1..c.len()).rev() {
            let (q, r) = self.coeff(j - 1).div_rem(&BigInt::from(s));
            assert!(r.is_zero(), "non-exact color division");
            c[j] += q;
        }
        EPoly { c, cap: self.cap }.trim()
    }

    /// Value at `u = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeff(0)
    }

    /// Coefficients in powers of `u`; requires an uncapped polynomial.
    pub fn to_u_basis(&self) -> Vec<BigInt> {
        let n = self.c.len();
        let mut out = vec![BigInt::zero(); n];
        for (j, cj) in self.c.iter().enumerate() {
            for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
                let b = BigInt::from(binomial(j as u64, i as u64));
                if (j - i) % 2 == 0 {
                    *slot += cj * b;
                } else {
                    *slot -= cj * b;
                }
            }
        }
        out
    }
}

/// Series in `z` with `EPoly` coefficients, orders `0..=nmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    pub coeffs: Vec<EPoly>,
    pub nmax: usize,
    pub cap: usize,
}

impl BivariateSeries {
    fn mul(&self, o: &Self) -> Self {
        let mut coeffs = vec![EPoly::zero(self.cap); self.nmax + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.c.is_empty() {
                continue;
            }
            for j in 0..=self.nmax - i {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(&o.coeffs[j]));
            }
        }
        BivariateSeries {
            coeffs,
            nmax: self.nmax,
            cap: self.cap,
        }
    }

    fn map(&self, f: impl Fn(&EPoly) -> EPoly) -> Self {
        BivariateSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            nmax: self.nmax,
            cap: self.cap,
        }
    }

    fn add_const(&self, p: &EPoly) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = s.coeffs[0].add(p);
        s
    }

    /// Word counts per `z` order (the `u = 1` marginal).
    pub fn marginal(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|p| p.at_one()).collect()
    }

    /// Total marker count per order (first `u` derivative at 1); needs `cap >= 1`.
    pub fn first_moment(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|p| p.coeff(1)).collect()
    }

    /// `sum binom(#, 2)` per order; needs `cap >= 2`.
    pub fn second_factorial(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|p| p.coeff(2)).collect()
    }
}

/// Solves `F_0 = f0`, `F_n = [z^{n-1}] (alpha F^2 + beta F)` coefficient by coefficient.
fn quadratic_fixed_point(f0: EPoly, alpha: &EPoly, beta: &EPoly, nmax: usize) -> BivariateSeries {
    let cap = f0.cap;
    let mut f: Vec<EPoly> = vec![f0];
    for n in 1..=nmax {
        let m = n - 1;
        let mut sq = EPoly::zero(cap);
        for i in 0..=m {
            sq = sq.add(&f[i].mul(&f[m - i]));
        }
        f.push(alpha.mul(&sq).add(&beta.mul(&f[m])));
    }
    BivariateSeries {
        coeffs: f,
        nmax,
        cap,
    }
}

/// Peaks in `s`-colored Dyck paths: `P' = u + s z P'(P' - u + 1)`, `P = P' - u + 1`.
pub fn peaks(s: u32, nmax: usize, cap: usize) -> BivariateSeries {
    let s = s as i64;
    let u = EPoly::u(cap);
    // s z P'(P' - u + 1) = s z P'^2 + s z (1 - u) P'
    let alpha = EPoly::constant(s, cap);
    let beta = EPoly::constant(1, cap).sub(&u).scale(s);
    let pp = quadratic_fixed_point(u.clone(), &alpha, &beta, nmax);
    pp.add_const(&EPoly::constant(1, cap).sub(&u))
}

/// Same-color valleys: `V = 1 + z(a V^2 - a V + s V)`, `a = u + s - 1`.
pub fn valleys(s: u32, nmax: usize, cap: usize) -> BivariateSeries {
    let a = EPoly::u_plus(s as i64, cap);
    let beta = EPoly::constant(s as i64, cap).sub(&a);
    quadratic_fixed_point(EPoly::constant(1, cap), &a, &beta, nmax)
}

/// `PV'`: `F = u + z F (a F - a u + s)`.
fn pv_prime(s: u32, nmax: usize, cap: usize) -> BivariateSeries {
    let u = EPoly::u(cap);
    let a = EPoly::u_plus(s as i64, cap);
    let beta = EPoly::constant(s as i64, cap).sub(&a.mul(&u));
    quadratic_fixed_point(u, &a, &beta, nmax)
}

/// Peaks plus same-color valleys in `s`-colored Dyck paths.
pub fn peaks_valleys(s: u32, nmax: usize, cap: usize) -> BivariateSeries {
    let u = EPoly::u(cap);
    pv_prime(s, nmax, cap).add_const(&EPoly::constant(1, cap).sub(&u))
}

/// `((u+s-1)/s (X - 1) + 1)^k X`.
fn with_extra_steps(x: &BivariateSeries, s: u32, k: u32) -> BivariateSeries {
    let one = EPoly::constant(1, x.cap);
    let factor = x
        .add_const(&one.scale(-1))
        .map(|p| p.match_factor(s as i64))
        .add_const(&one);
    let mut r = x.clone();
    for _ in 0..k {
        r = r.mul(&factor);
    }
    r
}

/// Same-color valleys in paths with `k` extra steps of fixed colors.
pub fn valleys_k(s: u32, k: u32, nmax: usize, cap: usize) -> BivariateSeries {
    with_extra_steps(&valleys(s, nmax, cap), s, k)
}

/// Peaks plus valleys in paths with `k` extra steps of fixed colors.
pub fn peaks_valleys_k(s: u32, k: u32, nmax: usize, cap: usize) -> BivariateSeries {
    with_extra_steps(&peaks_valleys(s, nmax, cap), s, k)
}

/// Pairs in fully reducible `d`-letter words:
/// `PFP = 1 + d z G/(1 - z(u+d-1) G)`, `G = PV'^{(d-1)}`.
pub fn pf_pairs_gf(d: u32, nmax: usize, cap: usize) -> BivariateSeries {
    let g = pv_prime(d - 1, nmax, cap);
    let a = EPoly::u_plus(d as i64, cap);
    // H = G + z a G H
    let mut h: Vec<EPoly> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let mut v = g.coeffs[n].clone();
        if n >= 1 {
            let mut conv = EPoly::zero(cap);
            for i in 0..n {
                conv = conv.add(&g.coeffs[i].mul(&h[n - 1 - i]));
            }
            v = v.add(&a.mul(&conv));
        }
        h.push(v);
    }
    let mut coeffs = vec![EPoly::constant(1, cap)];
    coeffs.extend(h.iter().take(nmax).map(|p| p.scale(d as i64)));
    BivariateSeries { coeffs, nmax, cap }
}

/// Pairs in words reducing to a fixed string of length `k`; order `n`
/// counts words with `n` reducible pairs.
pub fn pf_pairs_gf_k(d: u32, k: u32, nmax: usize, cap: usize) -> BivariateSeries {
    let pfp = pf_pairs_gf(d, nmax, cap);
    if k == 0 {
        return pfp;
    }
    let one = EPoly::constant(1, cap);
    let first = pfp
        .add_const(&one.scale(-1))
        .map(|p| p.match_factor(d as i64))
        .add_const(&one);
    first.mul(&peaks_valleys_k(d - 1, k - 1, nmax, cap))
}

/// Which generating function to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bogf {
    /// Peaks, `s`-colored Dyck paths with `k` extra steps.
    P { s: u32 },
    /// Same-color valleys.
    V { s: u32 },
    /// Peaks plus same-color valleys.
    PV { s: u32 },
    /// Adjacent equal pairs in `d`-letter PF words.
    PFP { d: u32 },
}

/// Full (uncapped) bivariate expansion to order `nmax`.
pub fn bivariate_series(gf: Bogf, k: u32, nmax: usize) -> BivariateSeries {
    let cap = 2 * nmax + k as usize + 1;
    match gf {
        Bogf::P { s } => {
            let p = peaks(s, nmax, cap);
            let mut r = p.clone();
            for _ in 0..k {
                r = r.mul(&p);
            }
            r
        }
        Bogf::V { s } => valleys_k(s, k, nmax, cap),
        Bogf::PV { s } => peaks_valleys_k(s, k, nmax, cap),
        Bogf::PFP { d } => pf_pairs_gf_k(d, k, nmax, cap),
    }
}

/// Histogram `pairs -> words` at order `n` of an uncapped series.
pub fn histogram_at(series: &BivariateSeries, n: usize) -> BTreeMap<usize, BigUint> {
    series.coeffs[n]
        .to_u_basis()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            assert!(!c.is_negative(), "negative histogram entry");
            (j, c.to_biguint().unwrap())
        })
        .collect()
}

/// Exact mean and variance from `e`-coefficients `(c0, c1, c2)`.
pub fn moments(
    c0: &BigInt,
    c1: &BigInt,
    c2: &BigInt,
) -> (num_rational::BigRational, num_rational::BigRational) {
    use num_rational::BigRational;
    let mean = BigRational::new(c1.clone(), c0.clone());
    let second = BigRational::new(c2 * 2 + c1, c0.clone());
    let var = second - &mean * &mean;
    (mean, var)
}
