//! Non-crossing hopping chains of `k` particles on `l` sites, weighted by
//! the sizes of the gaps between them.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat, ChainKind, MarkovChain};
use crate::counting::{catalan, pf_count, rational_to_f64};
use crate::error::{check_size, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HopVariant {
    /// First gap weighted by `W^{(d)}`, the rest by `C^{(d-1)}`.
    PfWeighted,
    /// Every gap weighted by `C^{(d-1)}`.
    CatalanWeighted,
    /// Metropolis chain targeting the Catalan product weights.
    Cwmh,
}

/// Increasing position tuples `1 <= j_1 < ... < j_k <= l`.
fn positions(l: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=k as u8).collect();
    if k == 0 {
        return vec![cur];
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] as usize == l - (k - i) {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Empty-site counts before, between and after the particles.
pub fn gaps(state: &[u8], l: usize) -> Vec<usize> {
    let mut g = Vec::with_capacity(state.len() + 1);
    let mut prev = 0usize;
    for &j in state {
        g.push(j as usize - prev - 1);
        prev = j as usize;
    }
    g.push(l - prev);
    g
}

struct Weights {
    w: Vec<BigUint>,
    c: Vec<BigUint>,
}

impl Weights {
    fn new(d: u32, m: usize) -> Self {
        Weights {
            w: (0..=m as u64).map(|n| pf_count(d, n, 0)).collect(),
            c: (0..=m as u64).map(|n| catalan(n, 0, d - 1)).collect(),
        }
    }

    fn block(&self, pf_first: bool, b: usize, m: usize) -> &BigUint {
        if pf_first && b == 0 {
            &self.w[m]
        } else {
            &self.c[m]
        }
    }

    fn pi(&self, pf_first: bool, g: &[usize]) -> BigUint {
        g.iter()
            .enumerate()
            .map(|(b, &m)| self.block(pf_first, b, m).clone())
            .product()
    }
}

fn ratio(a: &BigUint, b: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(a.clone()), BigInt::from(b.clone()))
}

pub const MAX_HOP_STATES: u128 = 200_000;

pub fn hopping_chain(d: u8, l: usize, k: usize, variant: HopVariant) -> Result<MarkovChain> {
    if d < 3 {
        return Err(Error::BadAlphabet(d as u32));
    }
    if k == 0 || k > l || l > 255 {
        return Err(Error::BadModelParams(format!(
            "need 1 <= k <= l <= 255, got k={k}, l={l}"
        )));
    }
    let size = crate::counting::binomial(l as u64, k as u64);
    check_size(
        "hopping states",
        u128::try_from(size).unwrap_or(u128::MAX),
        MAX_HOP_STATES,
    )?;
    let states = positions(l, k);
    let index: HashMap<&[u8], usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let wt = Weights::new(d as u32, l - k);
    let pf_first = variant == HopVariant::PfWeighted;
    let pis: Vec<BigUint> = states
        .iter()
        .map(|s| wt.pi(pf_first, &gaps(s, l)))
        .collect();
    let base = rat(1, 4 * k as u64);
    let colors = BigRational::from_integer(BigInt::from(d as u32 - 1));
    let mut maps = Vec::with_capacity(states.len());
    for (si, s) in states.iter().enumerate() {
        let g = gaps(s, l);
        let mut m = BTreeMap::new();
        let mut out = BigRational::zero();
        for i in 0..k {
            // right move shrinks gap i+1, left move shrinks gap i
            for (dir, b) in [(1i16, i + 1), (-1i16, i)] {
                let size = g[b];
                if size == 0 {
                    continue;
                }
                let mut t = s.clone();
                t[i] = (t[i] as i16 + dir) as u8;
                let ti = index[t.as_slice()];
                let p = match variant {
                    HopVariant::Cwmh => {
                        let r = ratio(&pis[ti], &pis[si]);
                        &base
                            * if r > BigRational::one() {
                                BigRational::one()
                            } else {
                                r
                            }
                    }
                    _ => {
                        &base
                            * &colors
                            * ratio(wt.block(pf_first, b, size - 1), wt.block(pf_first, b, size))
                    }
                };
                out += &p;
                m.insert(ti, p);
            }
        }
        m.insert(si, BigRational::one() - out);
        maps.push(m);
    }
    let z: BigUint = pis.iter().sum();
    let pi = pis.iter().map(|p| ratio(p, &z)).collect();
    Ok(MarkovChain::from_maps(
        ChainKind::Hopping(variant),
        states,
        maps,
        pi,
    ))
}

/// `c = d(d-1)/(d-2)^2`.
pub fn sandwich_constant(d: u8) -> BigRational {
    let d = d as i64;
    rat(d * (d - 1), (d - 2) * (d - 2))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioSandwich {
    pub c: BigRational,
    pub min_ratio: BigRational,
    pub max_ratio: BigRational,
    pub holds: bool,
}

/// Range of `P_PFH(s,t) / P_CH(s,t)` over all moves.
pub fn hopping_ratio_sandwich(d: u8, l: usize, k: usize) -> Result<RatioSandwich> {
    let pfh = hopping_chain(d, l, k, HopVariant::PfWeighted)?;
    let ch = hopping_chain(d, l, k, HopVariant::CatalanWeighted)?;
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for (s, row) in pfh.rows.iter().enumerate() {
        for (t, p) in row {
            if *t == s {
                continue;
            }
            let r = p / ch.get(s, *t);
            if lo.as_ref().is_none_or(|x| r < *x) {
                lo = Some(r.clone());
            }
            if hi.as_ref().is_none_or(|x| r > *x) {
                hi = Some(r);
            }
        }
    }
    let c = sandwich_constant(d);
    let (min_ratio, max_ratio) = (
        lo.unwrap_or_else(BigRational::one),
        hi.unwrap_or_else(BigRational::one),
    );
    let holds = min_ratio >= c.recip() && max_ratio <= c;
    Ok(RatioSandwich {
        c,
        min_ratio,
        max_ratio,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSandwich {
    pub pfh_gap: f64,
    pub cwmh_gap: f64,
    /// `gap(CWMH) / (4 c^4)`
    pub lower: f64,
    pub holds: bool,
}

pub fn dirichlet_sandwich(d: u8, l: usize, k: usize) -> Result<DirichletSandwich> {
    let pfh_gap = hopping_chain(d, l, k, HopVariant::PfWeighted)?.gap()?;
    let cwmh_gap = hopping_chain(d, l, k, HopVariant::Cwmh)?.gap()?;
    let c = rational_to_f64(&sandwich_constant(d));
    let lower = cwmh_gap / (4.0 * c.powi(4));
    Ok(DirichletSandwich {
        pfh_gap,
        cwmh_gap,
        lower,
        holds: pfh_gap >= lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn position_tuples() {
        assert_eq!(positions(4, 2).len(), 6);
        assert_eq!(positions(3, 3), vec![vec![1, 2, 3]]);
        assert_eq!(gaps(&[2, 5], 6), vec![1, 2, 1]);
    }

    #[test]
    fn chains_are_exact() {
        for v in [
            HopVariant::PfWeighted,
            HopVariant::CatalanWeighted,
            HopVariant::Cwmh,
        ] {
            for (l, k) in [(1, 1), (5, 1), (6, 2), (7, 3)] {
                let c = hopping_chain(3, l, k, v).unwrap();
                assert!(
                    c.rows_sum_to_one() && c.is_reversible() && c.is_stationary(),
                    "{v:?} {l} {k}"
                );
                assert!(c.min_self_loop() >= rat(1, 2));
            }
        }
    }

    #[test]
    fn sandwiches() {
        for l in 1..=10 {
            for k in 1..=3.min(l) {
                assert!(hopping_ratio_sandwich(3, l, k).unwrap().holds);
            }
        }
        let r = dirichlet_sandwich(3, 6, 2).unwrap();
        assert!(r.holds, "{r:?}");
    }
}
