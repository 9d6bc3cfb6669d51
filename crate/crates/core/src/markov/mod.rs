//! Pair-flip and pair-displacing Markov chains with exact rational
//! transition matrices, plus the gap bounds built on them.

mod flow;
pub mod hopping;
pub mod supertree;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::spectra::{
    self, low_spectrum, spectral_gap, HamiltonianParams, Model, SolverOptions, SparseOperator,
};
use crate::words::{enumerate_subspace, for_each_flip, SubspaceLabel};

pub use hopping::{
    dirichlet_sandwich, hopping_chain, hopping_ratio_sandwich, DirichletSandwich, HopVariant,
    RatioSandwich,
};
pub use supertree::{
    build_supertree, canonical_path, canonical_path_bound, q_table, CanonicalPathStats, QTable,
    Supertree,
};

pub(crate) fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    PairFlip,
    PairDisplacing,
    Hopping(HopVariant),
}

/// A finite chain: `rows[s]` lists `(t, P(s,t))` with `t` ascending, diagonal included.
#[derive(Debug, Clone)]
pub struct MarkovChain {
    pub kind: ChainKind,
    pub states: Vec<Vec<u8>>,
    pub rows: Vec<Vec<(usize, BigRational)>>,
    pub pi: Vec<BigRational>,
}

impl MarkovChain {
    pub(crate) fn from_maps(
        kind: ChainKind,
        states: Vec<Vec<u8>>,
        maps: Vec<BTreeMap<usize, BigRational>>,
        pi: Vec<BigRational>,
    ) -> Self {
        let rows = maps
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, p)| !p.is_zero()).collect())
            .collect();
        MarkovChain {
            kind,
            states,
            rows,
            pi,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn get(&self, s: usize, t: usize) -> BigRational {
        let row = &self.rows[s];
        row.binary_search_by_key(&t, |e| e.0)
            .map(|i| row[i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn index_of(&self, s: &[u8]) -> Option<usize> {
        self.states.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    pub fn rows_sum_to_one(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().map(|e| &e.1).sum::<BigRational>() == BigRational::one())
    }

    /// `pi(s) P(s,t) == pi(t) P(t,s)` for every entry.
    pub fn is_reversible(&self) -> bool {
        self.rows.iter().enumerate().all(|(s, r)| {
            r.iter()
                .all(|(t, p)| &self.pi[s] * p == &self.pi[*t] * self.get(*t, s))
        })
    }

    /// `pi P == pi` and `sum pi == 1`.
    pub fn is_stationary(&self) -> bool {
        let mut acc = vec![BigRational::zero(); self.len()];
        for (s, r) in self.rows.iter().enumerate() {
            for (t, p) in r {
                acc[*t] += &self.pi[s] * p;
            }
        }
        acc == self.pi && self.pi.iter().sum::<BigRational>() == BigRational::one()
    }

    pub fn min_self_loop(&self) -> BigRational {
        (0..self.len())
            .map(|s| self.get(s, s))
            .min()
            .unwrap_or_else(BigRational::one)
    }

    /// Smallest and largest off-diagonal nonzero entry.
    pub fn off_diagonal_range(&self) -> Option<(BigRational, BigRational)> {
        let it = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(s, r)| r.iter().filter(move |e| e.0 != s).map(|e| e.1.clone()));
        let v: Vec<BigRational> = it.collect();
        Some((v.iter().min()?.clone(), v.iter().max()?.clone()))
    }

    /// `D^{1/2} (I - P) D^{-1/2}` as a symmetric float operator.
    pub fn laplacian_operator(&self) -> SparseOperator {
        let pi: Vec<f64> = self
            .pi
            .iter()
            .map(crate::counting::rational_to_f64)
            .collect();
        let mut t = Vec::new();
        for (s, r) in self.rows.iter().enumerate() {
            for (u, p) in r {
                let p = crate::counting::rational_to_f64(p);
                let v = if s == *u {
                    1.0 - p
                } else {
                    -p * (pi[s] / pi[*u]).sqrt()
                };
                t.push((s, *u, v));
            }
        }
        SparseOperator::from_triplets(self.states.clone(), t)
    }

    /// `1 - lambda_2(P)`, in floating point.
    pub fn gap(&self) -> Result<f64> {
        let op = self.laplacian_operator();
        if op.dim < 2 {
            return Err(Error::BadModelParams("a one-state chain has no gap".into()));
        }
        let spec = low_spectrum(&op, 4.min(op.dim), &SolverOptions::default())?;
        spectral_gap(&spec.values).ok_or_else(|| Error::BadModelParams("degenerate chain".into()))
    }
}

fn fully_reducible(d: u8, n: usize, limit: u128) -> Result<Vec<Vec<u8>>> {
    Ok(
        enumerate_subspace(&SubspaceLabel::fully_reducible(d, 2 * n)?, limit)?
            .into_iter()
            .map(|w| w.letters().to_vec())
            .collect(),
    )
}

/// `P = I - H / ((2n-1)(d-1))` on fully reducible words of length `2n`.
pub fn pf_chain(d: u8, n: usize, limit: u128) -> Result<MarkovChain> {
    if n == 0 {
        return Err(Error::BadModelParams("n must be at least 1".into()));
    }
    let states = fully_reducible(d, n, limit)?;
    let index: HashMap<&[u8], usize> = states
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let step = rat(1, 2 * (2 * n as u64 - 1) * (d as u64 - 1));
    let mut maps = Vec::with_capacity(states.len());
    for (s, w) in states.iter().enumerate() {
        let mut m = BTreeMap::new();
        let mut out = BigRational::zero();
        for_each_flip(d, w, |i, t| {
            let mut v = w.clone();
            v[i] = t;
            v[i + 1] = t;
            *m.entry(index[v.as_slice()])
                .or_insert_with(BigRational::zero) += &step;
            out += &step;
        });
        m.insert(s, BigRational::one() - out);
        maps.push(m);
    }
    let w = states.len();
    Ok(MarkovChain::from_maps(
        ChainKind::PairFlip,
        states,
        maps,
        vec![rat(1, w as u64); w],
    ))
}

/// Pick one of `2n-1` positions; on a pair, delete it and insert a pair of
/// one of `d` colors into one of the `2n-1` slots of the shortened word.
pub fn pd_chain(d: u8, n: usize, limit: u128) -> Result<MarkovChain> {
    if n == 0 {
        return Err(Error::BadModelParams("n must be at least 1".into()));
    }
    let states = fully_reducible(d, n, limit)?;
    let index: HashMap<&[u8], usize> = states
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let slots = 2 * n - 1;
    let unit = rat(1, (slots * slots) as u64 * d as u64);
    let mut maps = Vec::with_capacity(states.len());
    for (s, w) in states.iter().enumerate() {
        let mut m: BTreeMap<usize, BigRational> = BTreeMap::new();
        let mut idle = rat(0, 1);
        for i in 0..slots {
            if w[i] != w[i + 1] {
                idle += rat(1, slots as u64);
                continue;
            }
            let mut short = w[..i].to_vec();
            short.extend_from_slice(&w[i + 2..]);
            for j in 0..slots {
                for c in 1..=d {
                    let mut v = short[..j].to_vec();
                    v.extend([c, c]);
                    v.extend_from_slice(&short[j..]);
                    *m.entry(index[v.as_slice()])
                        .or_insert_with(BigRational::zero) += &unit;
                }
            }
        }
        *m.entry(s).or_insert_with(BigRational::zero) += idle;
        maps.push(m);
    }
    let w = states.len();
    Ok(MarkovChain::from_maps(
        ChainKind::PairDisplacing,
        states,
        maps,
        vec![rat(1, w as u64); w],
    ))
}

/// The `(2n-1)(d-1)`-scaled PF chain gap against the Hamiltonian gap.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRelation {
    pub scaled_chain_gap: f64,
    pub hamiltonian_gap: f64,
    pub difference: f64,
}

pub fn pf_gap_relation(d: u8, n: usize, limit: u128) -> Result<GapRelation> {
    let chain = pf_chain(d, n, limit)?;
    let scaled = chain.gap()? * ((2 * n - 1) * (d as usize - 1)) as f64;
    let (_, h) = spectra::subspace_gap(&HamiltonianParams {
        limit,
        ..HamiltonianParams::new(Model::Pf { d }, 2 * n)
    })?;
    Ok(GapRelation {
        scaled_chain_gap: scaled,
        hamiltonian_gap: h,
        difference: (scaled - h).abs(),
    })
}

/// `1 / (4 (2n-1)^4 d^2)`
pub fn comparison_constant(d: u32, n: u64) -> BigRational {
    let m = BigInt::from(2 * n - 1);
    BigRational::new(
        BigInt::one(),
        BigInt::from(4) * m.pow(4) * BigInt::from(d) * BigInt::from(d),
    )
}

/// PF flips moving the pair at `i, i+1` so that a pair of color `c` ends at
/// `j, j+1`; the returned words start with `w` itself.
pub fn bubble_path(w: &[u8], i: usize, j: usize, c: u8) -> Result<Vec<Vec<u8>>> {
    if i + 1 >= w.len() || j + 1 >= w.len() || w[i] != w[i + 1] {
        return Err(Error::PositionNotAPair(i + 1, i + 2));
    }
    if j < i {
        let rev: Vec<u8> = w.iter().rev().cloned().collect();
        let m = w.len() - 2;
        let mut p = bubble_path(&rev, m - i, m - j, c)?;
        p.iter_mut().for_each(|x| x.reverse());
        return Ok(p);
    }
    let mut cur = w.to_vec();
    let mut path = vec![cur.clone()];
    let flip = |cur: &mut Vec<u8>, k: usize, t: u8, path: &mut Vec<Vec<u8>>| {
        if cur[k] != t {
            cur[k] = t;
            cur[k + 1] = t;
            path.push(cur.clone());
        }
    };
    for k in i..j {
        let t = cur[k + 2];
        flip(&mut cur, k, t, &mut path);
    }
    flip(&mut cur, j, c, &mut path);
    Ok(path)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub constant: BigRational,
    pub pf_gap: f64,
    pub pd_gap: f64,
    /// `constant * pd_gap <= pf_gap`
    pub holds: bool,
    /// PD moves whose bubble decomposition was replayed and checked.
    pub moves_checked: usize,
}

/// Checks the comparison inequality with exact chains and replays every
/// PD move as a sequence of PF flips.
pub fn comparison_bound(d: u8, n: usize, limit: u128) -> Result<ComparisonReport> {
    let pf = pf_chain(d, n, limit)?;
    let pd = pd_chain(d, n, limit)?;
    let mut moves = 0;
    for w in &pd.states {
        for i in 0..2 * n - 1 {
            if w[i] != w[i + 1] {
                continue;
            }
            for j in 0..2 * n - 1 {
                for c in 1..=d {
                    let path = bubble_path(w, i, j, c)?;
                    let mut short = w[..i].to_vec();
                    short.extend_from_slice(&w[i + 2..]);
                    let mut target = short[..j].to_vec();
                    target.extend([c, c]);
                    target.extend_from_slice(&short[j..]);
                    if path.last() != Some(&target) {
                        return Err(Error::BadModelParams(format!(
                            "bubble path of {w:?} misses {target:?}"
                        )));
                    }
                    for e in path.windows(2) {
                        let (a, b) = (pf.index_of(&e[0]).unwrap(), pf.index_of(&e[1]).unwrap());
                        if a == b || pf.get(a, b).is_zero() {
                            return Err(Error::BadModelParams(format!(
                                "bubble step {:?} -> {:?} is not a flip",
                                e[0], e[1]
                            )));
                        }
                    }
                    moves += 1;
                }
            }
        }
    }
    let constant = comparison_constant(d as u32, n as u64);
    let pf_gap = pf.gap()?;
    let pd_gap = pd.gap()?;
    Ok(ComparisonReport {
        holds: crate::counting::rational_to_f64(&constant) * pd_gap <= pf_gap,
        constant,
        pf_gap,
        pd_gap,
        moves_checked: moves,
    })
}

/// `num/den` text for JSON output.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pf_chain_small() {
        let c = pf_chain(3, 2, 1 << 20).unwrap();
        assert_eq!(c.len(), 15);
        let (lo, hi) = c.off_diagonal_range().unwrap();
        assert_eq!(lo, rat(1, 12));
        assert_eq!(hi, rat(1, 12));
        assert!(c.rows_sum_to_one() && c.is_reversible() && c.is_stationary());
        assert!(c.min_self_loop() >= rat(1, 2));
    }

    #[test]
    fn pd_chain_n1() {
        let c = pd_chain(3, 1, 1 << 20).unwrap();
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(c.get(s, t), rat(1, 3));
            }
        }
    }

    #[test]
    fn pd_chain_bounds() {
        for n in 1..=3 {
            let c = pd_chain(3, n, 1 << 20).unwrap();
            assert!(c.rows_sum_to_one() && c.is_reversible() && c.is_stationary());
            let m = (2 * n - 1) as u64;
            let (lo, hi) = c.off_diagonal_range().unwrap();
            assert!(lo >= rat(1, m * m * 3) && hi <= rat(1, 3));
        }
    }

    #[test]
    fn bubble_example() {
        let w: Vec<u8> = "122112332331".bytes().map(|b| b - b'0').collect();
        let t: Vec<u8> = "111233112331".bytes().map(|b| b - b'0').collect();
        let p = bubble_path(&w, 1, 6, 1).unwrap();
        assert_eq!(p.last().unwrap(), &t);
        for e in p.windows(2) {
            let diff: Vec<usize> = (0..w.len()).filter(|&k| e[0][k] != e[1][k]).collect();
            assert_eq!(diff.len(), 2);
            assert_eq!(diff[1], diff[0] + 1);
            assert_eq!(e[0][diff[0]], e[0][diff[1]]);
        }
        let back = bubble_path(&t, 6, 1, 2).unwrap();
        assert_eq!(back.last().unwrap(), &w);
    }

    #[test]
    fn comparison_small() {
        for n in 1..=3 {
            let r = comparison_bound(3, n, 1 << 20).unwrap();
            assert!(r.holds, "{r:?}");
            assert!(r.moves_checked > 0);
        }
        assert_eq!(comparison_constant(3, 2), rat(1, 4 * 81 * 9));
    }

    #[test]
    fn gap_relation_small() {
        let r = pf_gap_relation(3, 3, 1 << 20).unwrap();
        assert!(r.difference < 1e-10, "{r:?}");
    }
}
