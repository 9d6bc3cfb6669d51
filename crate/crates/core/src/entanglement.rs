//! Half-chain Schmidt spectra and entanglement entropy of the uniform
//! ground states, with an explicit-state SVD oracle.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counting::{
    catalan, catalan_fixed_length_row, fixed_length_row, log2_big, log2_ratio, motzkin, pf_count,
};
use crate::error::{check_size, Error, Result};
use crate::words::{enumerate_subspace, IrreducibleString, SubspaceLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchmidtModel {
    Pf { d: u32 },
    Motzkin,
    ColoredDyck { s: u32 },
}

/// One Schmidt value: `lambda^2 = count^2 / total`, repeated `multiplicity` times.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtEntry {
    /// Unmatched letters at the cut.
    pub height: usize,
    pub count: BigUint,
    pub multiplicity: BigUint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub model: SchmidtModel,
    pub n_sites: usize,
    pub entries: Vec<SchmidtEntry>,
    /// Size of the ground-state basis.
    pub total: BigUint,
}

impl SchmidtSpectrum {
    pub fn lambda_sq(&self, i: usize) -> BigRational {
        let c = BigInt::from(&self.entries[i].count * &self.entries[i].count);
        BigRational::new(c, BigInt::from(self.total.clone()))
    }

    /// `sum multiplicity * count^2 == total`, exactly.
    pub fn is_normalized(&self) -> bool {
        let s: BigUint = self
            .entries
            .iter()
            .map(|e| &e.multiplicity * &e.count * &e.count)
            .sum();
        s == self.total
    }

    pub fn rank(&self) -> BigUint {
        self.entries
            .iter()
            .filter(|e| !e.count.is_zero())
            .map(|e| e.multiplicity.clone())
            .sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.iter().filter(|e| !e.count.is_zero()).count()
    }

    /// All `lambda^2` with multiplicity, descending; only for small ranks.
    pub fn expanded(&self, limit: u128) -> Result<Vec<f64>> {
        let rank = self.rank();
        check_size(
            "Schmidt rank",
            u128::try_from(&rank).unwrap_or(u128::MAX),
            limit,
        )?;
        let mut v = Vec::new();
        for e in self.entries.iter().filter(|e| !e.count.is_zero()) {
            let x = 2f64.powf(2.0 * log2_big(&e.count) - log2_big(&self.total));
            let m = u64::try_from(&e.multiplicity).unwrap();
            v.extend(std::iter::repeat_n(x, m as usize));
        }
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(v)
    }
}

pub fn schmidt_spectrum(model: SchmidtModel, n_sites: usize) -> Result<SchmidtSpectrum> {
    let half = n_sites / 2;
    let entries = match model {
        SchmidtModel::Pf { d } => {
            if n_sites % 4 != 0 {
                return Err(Error::BadParity(format!(
                    "PF cut needs N divisible by 4, got {n_sites}"
                )));
            }
            if d < 2 {
                return Err(Error::BadAlphabet(d));
            }
            let row = fixed_length_row(d, half);
            (0..=half)
                .step_by(2)
                .map(|h| SchmidtEntry {
                    height: h,
                    count: row[h].clone(),
                    multiplicity: BigUint::from(d).pow(h.min(1) as u32)
                        * BigUint::from(d - 1).pow(h.saturating_sub(1) as u32),
                })
                .collect()
        }
        SchmidtModel::Motzkin => {
            if n_sites % 2 != 0 {
                return Err(Error::BadParity(format!(
                    "Motzkin cut needs even N, got {n_sites}"
                )));
            }
            (0..=half)
                .map(|h| {
                    Ok(SchmidtEntry {
                        height: h,
                        count: motzkin(half as u64, h as u64, 1)?,
                        multiplicity: BigUint::one(),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        SchmidtModel::ColoredDyck { s } => {
            if n_sites % 2 != 0 {
                return Err(Error::BadParity(format!(
                    "Dyck cut needs even N, got {n_sites}"
                )));
            }
            let row = catalan_fixed_length_row(s, half);
            (half % 2..=half)
                .step_by(2)
                .map(|h| SchmidtEntry {
                    height: h,
                    count: row[h].clone(),
                    multiplicity: BigUint::from(s).pow(h as u32),
                })
                .collect()
        }
    };
    let total = match model {
        SchmidtModel::Pf { d } => pf_count(d, half as u64, 0),
        SchmidtModel::Motzkin => motzkin(n_sites as u64, 0, 1)?,
        SchmidtModel::ColoredDyck { s } => catalan(half as u64, 0, s),
    };
    Ok(SchmidtSpectrum {
        model,
        n_sites,
        entries,
        total,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    pub n_sites: usize,
    pub entropy_bits: f64,
    pub rank: BigUint,
    pub distinct: usize,
}

/// Entanglement entropy in bits, `log2 T - sum_i (m_i c_i^2 / T) log2 c_i^2`.
pub fn entropy(spec: &SchmidtSpectrum) -> Result<EntropyReport> {
    if !spec.is_normalized() {
        let s: BigUint = spec
            .entries
            .iter()
            .map(|e| &e.multiplicity * &e.count * &e.count)
            .sum();
        return Err(Error::NotNormalized(
            log2_ratio(&s, &spec.total).exp2() - 1.0,
        ));
    }
    let lt = log2_big(&spec.total);
    let mut terms: Vec<f64> = spec
        .entries
        .iter()
        .filter(|e| !e.count.is_zero())
        .map(|e| {
            let lc2 = 2.0 * log2_big(&e.count);
            let lw = log2_big(&e.multiplicity) + lc2 - lt;
            lw.exp2() * (lt - lc2)
        })
        .collect();
    terms.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
    Ok(EntropyReport {
        n_sites: spec.n_sites,
        entropy_bits: terms.iter().sum::<f64>(),
        rank: spec.rank(),
        distinct: spec.distinct(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyComparison {
    pub d: u32,
    pub n_sites: usize,
    pub pf_bits: f64,
    pub dyck_bits: f64,
    pub ratio: f64,
    /// `((d-2)/(d-1))^2`
    pub lower_const: f64,
    /// `(d/(d-2))^2`
    pub upper_const: f64,
    /// `S_PF - lower_const * S_D`
    pub lower_slack: f64,
    /// `upper_const * S_D - S_PF`
    pub upper_slack: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// PF entropy against the `(d-1)`-colored Dyck entropy at the same length.
pub fn entropy_comparison(d: u32, n_sites: usize) -> Result<EntropyComparison> {
    if d < 3 {
        return Err(Error::BadModelParams("needs d >= 3".into()));
    }
    let pf = entropy(&schmidt_spectrum(SchmidtModel::Pf { d }, n_sites)?)?.entropy_bits;
    let dy = entropy(&schmidt_spectrum(
        SchmidtModel::ColoredDyck { s: d - 1 },
        n_sites,
    )?)?
    .entropy_bits;
    let df = d as f64;
    let lower_const = ((df - 2.0) / (df - 1.0)).powi(2);
    let upper_const = (df / (df - 2.0)).powi(2);
    let lower_slack = pf - lower_const * dy;
    let upper_slack = upper_const * dy - pf;
    Ok(EntropyComparison {
        d,
        n_sites,
        pf_bits: pf,
        dyck_bits: dy,
        ratio: pf / dy,
        lower_const,
        upper_const,
        lower_slack,
        upper_slack,
        lower_ok: lower_slack >= 0.0,
        upper_ok: upper_slack >= 0.0,
    })
}

/// Variance of the signed cut label `k` for `d = 2`, `N = 4n`.
pub fn d2_schmidt_variance(n: u64) -> BigRational {
    let spec = schmidt_spectrum(SchmidtModel::Pf { d: 2 }, 4 * n as usize).expect("N = 4n");
    let mut num = BigUint::zero();
    for e in &spec.entries {
        let r = (e.height / 2) as u64;
        // the two strings of length 2r sit at k = +r and k = -r
        num += &e.count * &e.count * (r * r) * &e.multiplicity;
    }
    BigRational::new(BigInt::from(num), BigInt::from(spec.total))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub n_sites: usize,
    pub entropy_bits: f64,
    /// Squared singular values, descending.
    pub lambda_sq: Vec<f64>,
}

/// Entropy from singular values of the explicit uniform state.
pub fn ground_state_entropy_oracle(d: u8, n_sites: usize, limit: u128) -> Result<OracleReport> {
    if n_sites % 2 != 0 {
        return Err(Error::BadParity("needs even N".into()));
    }
    let words = enumerate_subspace(&SubspaceLabel::fully_reducible(d, n_sites)?, limit)?;
    let amp = 1.0 / (words.len() as f64).sqrt();
    let half = n_sites / 2;
    let state: Vec<(&[u8], &[u8])> = words.iter().map(|w| w.letters().split_at(half)).collect();
    Ok(OracleReport {
        n_sites,
        ..svd_entropy(&state.iter().map(|&(l, r)| (l, r, amp)).collect::<Vec<_>>())
    })
}

/// Entropy of a real state given as `(left, right, amplitude)` triples.
pub fn svd_entropy(state: &[(&[u8], &[u8], f64)]) -> OracleReport {
    let mut left_ix: HashMap<&[u8], usize> = HashMap::new();
    let mut right_ix: HashMap<&[u8], usize> = HashMap::new();
    for &(l, r, _) in state {
        let n = left_ix.len();
        left_ix.entry(l).or_insert(n);
        let n = right_ix.len();
        right_ix.entry(r).or_insert(n);
    }
    // union-find over left rows and right columns (offset)
    let nl = left_ix.len();
    let mut parent: Vec<usize> = (0..nl + right_ix.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(l, r, _) in state {
        let a = find(&mut parent, left_ix[l]);
        let b = find(&mut parent, nl + right_ix[r]);
        parent[a] = b;
    }
    let mut comps: HashMap<usize, (Vec<usize>, Vec<usize>, Vec<(usize, usize, f64)>)> =
        HashMap::new();
    let mut row_pos = vec![usize::MAX; nl];
    let mut col_pos = vec![usize::MAX; right_ix.len()];
    for &(l, r, a) in state {
        let (li, ri) = (left_ix[l], right_ix[r]);
        let root = find(&mut parent, li);
        let c = comps.entry(root).or_default();
        if row_pos[li] == usize::MAX {
            row_pos[li] = c.0.len();
            c.0.push(li);
        }
        if col_pos[ri] == usize::MAX {
            col_pos[ri] = c.1.len();
            c.1.push(ri);
        }
        c.2.push((row_pos[li], col_pos[ri], a));
    }
    let mut lambda_sq = Vec::new();
    for (rows, cols, entries) in comps.values() {
        let mut m = DMatrix::<f64>::zeros(rows.len(), cols.len());
        for &(i, j, a) in entries {
            m[(i, j)] += a;
        }
        let sv = m.svd(false, false).singular_values;
        lambda_sq.extend(sv.iter().map(|s| s * s).filter(|&x| x > 1e-14));
    }
    lambda_sq.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let entropy_bits = -lambda_sq.iter().map(|&x| x * x.log2()).sum::<f64>();
    OracleReport {
        n_sites: 0,
        entropy_bits,
        lambda_sq,
    }
}

/// Total Schmidt rank with multiplicity, `1 + sum_{r=1}^{N/4} d(d-1)^{2r-1}`.
pub fn pf_rank_formula(d: u32, n_sites: usize) -> BigUint {
    (1..=n_sites / 4).fold(BigUint::one(), |acc, r| {
        acc + BigUint::from(IrreducibleString::count(d as u8, 2 * r))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn d2_n4_spectrum() {
        let s = schmidt_spectrum(SchmidtModel::Pf { d: 2 }, 4).unwrap();
        assert_eq!(s.lambda_sq(0), r(2, 3));
        assert_eq!(s.lambda_sq(1), r(1, 6));
        assert_eq!(s.entries[1].multiplicity, BigUint::from(2u32));
        let e = entropy(&s).unwrap();
        let want =
            -(2.0f64 / 3.0) * (2.0f64 / 3.0).log2() - 2.0 * (1.0 / 6.0) * (1.0f64 / 6.0).log2();
        assert!((e.entropy_bits - want).abs() < 1e-12);
        assert!((e.entropy_bits - 1.2516).abs() < 1e-4);
    }

    #[test]
    fn d3_n8_spectrum() {
        let s = schmidt_spectrum(SchmidtModel::Pf { d: 3 }, 8).unwrap();
        assert_eq!(s.lambda_sq(0), r(225, 543));
        let mult: Vec<u64> = s
            .entries
            .iter()
            .map(|e| u64::try_from(&e.multiplicity).unwrap())
            .collect();
        assert_eq!(mult, [1, 6, 24]);
        assert!(s.is_normalized());
        assert_eq!(s.rank(), pf_rank_formula(3, 8));
    }

    #[test]
    fn motzkin_n4() {
        let s = schmidt_spectrum(SchmidtModel::Motzkin, 4).unwrap();
        assert_eq!(s.total, BigUint::from(9u32));
        assert!(s.is_normalized());
    }

    #[test]
    fn trivial_entropy() {
        let s = SchmidtSpectrum {
            model: SchmidtModel::Motzkin,
            n_sites: 0,
            entries: vec![SchmidtEntry {
                height: 0,
                count: BigUint::one(),
                multiplicity: BigUint::one(),
            }],
            total: BigUint::one(),
        };
        assert_eq!(entropy(&s).unwrap().entropy_bits, 0.0);
        let bad = SchmidtSpectrum {
            total: BigUint::from(2u32),
            ..s
        };
        assert!(matches!(entropy(&bad), Err(Error::NotNormalized(_))));
        assert!(matches!(
            schmidt_spectrum(SchmidtModel::Pf { d: 3 }, 6),
            Err(Error::BadParity(_))
        ));
    }

    #[test]
    fn d2_variance() {
        assert_eq!(d2_schmidt_variance(1), r(1, 3));
        assert_eq!(d2_schmidt_variance(2), r(4, 7));
    }

    #[test]
    fn oracle_small() {
        for (d, n) in [(2u8, 4usize), (3, 4), (3, 8)] {
            let o = ground_state_entropy_oracle(d, n, 1 << 20).unwrap();
            let s = schmidt_spectrum(SchmidtModel::Pf { d: d as u32 }, n).unwrap();
            assert!((o.entropy_bits - entropy(&s).unwrap().entropy_bits).abs() < 1e-10);
            let want = s.expanded(1 << 20).unwrap();
            assert_eq!(want.len(), o.lambda_sq.len());
            for (a, b) in want.iter().zip(&o.lambda_sq) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }
}
