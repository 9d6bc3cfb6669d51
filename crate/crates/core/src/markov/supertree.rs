//! The supertree over fully reducible words, its `q` table, and the
//! canonical-path congestion bound for the PD chain.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::flow::Network;
use super::{ChainKind, MarkovChain};
use crate::counting::ratio_tables;
use crate::error::{Error, Result};
use crate::words::{enumerate_subspace, SubspaceLabel};

/// `q_{i,n}` for `i = 0..n-1`, one row per `n = 2..=nmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    pub d: u32,
    /// `rows[n]` holds `q_{0,n}, ..., q_{n-1,n}` after saturation at 1; rows 0 and 1 are empty.
    pub rows: Vec<Vec<BigRational>>,
    /// `raw[n]` is the same recursion without saturation.
    pub raw: Vec<Vec<BigRational>>,
    /// `(i, n)` entries where saturation was applied.
    pub saturated: Vec<(usize, usize)>,
}

impl QTable {
    pub fn get(&self, i: usize, n: usize) -> Option<&BigRational> {
        self.rows.get(n)?.get(i)
    }

    /// `q_{n-1,n} = 1` before saturation for every row.
    pub fn ends_at_one(&self) -> bool {
        self.raw
            .iter()
            .skip(2)
            .all(|r| r.last() == Some(&BigRational::one()))
    }
}

/// `q_{i+1,n} X_{i+1} + (1 - q_{i,n}) Y_{n-i-1} = Y_n`, from `q_{0,n} = 0`.
pub fn q_table(d: u32, nmax: usize) -> Result<QTable> {
    if d < 3 {
        return Err(Error::BadAlphabet(d));
    }
    let t = ratio_tables(d, nmax as u64);
    let one = BigRational::one();
    let mut rows = vec![Vec::new(), Vec::new()];
    let mut raw = rows.clone();
    let mut saturated = Vec::new();
    for n in 2..=nmax {
        let mut q = vec![BigRational::zero()];
        let mut r = vec![BigRational::zero()];
        for i in 0..n - 1 {
            let next = (&t.y[n] - (&one - &q[i]) * &t.y[n - i - 1]) / &t.x[i + 1];
            r.push(next.clone());
            if next > one {
                saturated.push((i + 1, n));
                q.push(one.clone());
            } else {
                q.push(next);
            }
        }
        rows.push(q);
        raw.push(r);
    }
    Ok(QTable {
        d,
        rows,
        raw,
        saturated,
    })
}

/// Levels `0..=nmax` of fully reducible words with a parent map `g` that
/// erases one adjacent pair.
#[derive(Debug, Clone)]
pub struct Supertree {
    pub d: u8,
    pub levels: Vec<Vec<Vec<u8>>>,
    /// `parent[k][i]` indexes `levels[k-1]`; `parent[0]` is empty.
    pub parent: Vec<Vec<usize>>,
    pub q: QTable,
}

fn erase_parents(w: &[u8]) -> BTreeSet<Vec<u8>> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| w[i] == w[i + 1])
        .map(|i| {
            let mut p = w[..i].to_vec();
            p.extend_from_slice(&w[i + 2..]);
            p
        })
        .collect()
}

fn level_words(d: u8, k: usize, limit: u128) -> Result<Vec<Vec<u8>>> {
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    Ok(
        enumerate_subspace(&SubspaceLabel::fully_reducible(d, 2 * k)?, limit)?
            .into_iter()
            .map(|w| w.letters().to_vec())
            .collect(),
    )
}

/// Assigns each child one parent so that every parent receives between
/// `floor(Y_k)` and `ceil(Y_k)` children.
fn assign_level(
    children: &[Vec<u8>],
    parents: &[Vec<u8>],
    y: &BigRational,
    k: usize,
) -> Result<Vec<usize>> {
    let pidx: HashMap<&[u8], usize> = parents
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let (nc, np) = (children.len(), parents.len());
    let (src, sink) = (nc + np, nc + np + 1);
    let mut g = Network::new(nc + np + 2);
    for (c, w) in children.iter().enumerate() {
        g.add_edge(src, c, 1);
        for p in erase_parents(w) {
            g.add_edge(c, nc + pidx[p.as_slice()], 1);
        }
    }
    let lo = y.floor().to_integer().to_u64().unwrap();
    let hi = y.ceil().to_integer().to_u64().unwrap();
    let sink_edges: Vec<usize> = (0..np).map(|p| g.add_edge(nc + p, sink, lo)).collect();
    let first = g.max_flow(src, sink);
    if first != lo * np as u64 {
        return Err(Error::MatchingInfeasible(k));
    }
    if hi > lo {
        for &e in &sink_edges {
            g.raise_cap(e, hi - lo);
        }
    }
    let total = first + g.max_flow(src, sink);
    if total != nc as u64 {
        return Err(Error::MatchingInfeasible(k));
    }
    let mut out = vec![usize::MAX; nc];
    for (c, slot) in out.iter_mut().enumerate() {
        let e = g
            .out_edges(c)
            .find(|&e| g.head(e) >= nc && g.head(e) < nc + np && g.flow_on(e) == 1);
        *slot = e
            .map(|e| g.head(e) - nc)
            .ok_or(Error::MatchingInfeasible(k))?;
    }
    Ok(out)
}

pub fn build_supertree(d: u8, nmax: usize, limit: u128) -> Result<Supertree> {
    let q = q_table(d as u32, nmax.max(2))?;
    let t = ratio_tables(d as u32, nmax as u64);
    let mut levels = vec![vec![Vec::new()]];
    let mut parent = vec![Vec::new()];
    for k in 1..=nmax {
        let words = level_words(d, k, limit)?;
        parent.push(assign_level(&words, &levels[k - 1], &t.y[k], k)?);
        levels.push(words);
    }
    Ok(Supertree {
        d,
        levels,
        parent,
        q,
    })
}

impl Supertree {
    pub fn nmax(&self) -> usize {
        self.levels.len() - 1
    }

    /// Number of children of each word in level `k`.
    pub fn children_counts(&self, k: usize) -> Vec<usize> {
        let mut c = vec![0; self.levels[k].len()];
        if let Some(p) = self.parent.get(k + 1) {
            p.iter().for_each(|&i| c[i] += 1);
        }
        c
    }

    /// `child \t parent` lines, level by level; the empty word prints as `-`.
    pub fn export_parent_list(&self) -> String {
        let show = |w: &[u8]| {
            if w.is_empty() {
                "-".to_string()
            } else {
                w.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(if self.d > 9 { "," } else { "" })
            }
        };
        let mut s = String::new();
        for k in 1..self.levels.len() {
            for (c, &p) in self.parent[k].iter().enumerate() {
                s.push_str(&format!(
                    "{}\t{}\n",
                    show(&self.levels[k][c]),
                    show(&self.levels[k - 1][p])
                ));
            }
        }
        s
    }

    fn index_in(&self, k: usize, w: &[u8]) -> Option<usize> {
        self.levels
            .get(k)?
            .binary_search_by(|x| x.as_slice().cmp(w))
            .ok()
    }

    /// `w, g(w), g(g(w)), ..., []` as level indices, starting at level `|w|/2`.
    pub fn ancestors(&self, w: &[u8]) -> Option<Vec<usize>> {
        let k = w.len() / 2;
        let mut i = self.index_in(k, w)?;
        let mut out = vec![i];
        for level in (1..=k).rev() {
            i = self.parent[level][i];
            out.push(i);
        }
        Some(out)
    }
}

/// Shrink `s` toward the root on the left while growing `t` from the root on
/// the right; repeated words are dropped.
pub fn canonical_path(tree: &Supertree, s: &[u8], t: &[u8]) -> Result<Vec<Vec<u8>>> {
    if s.len() != t.len() || s.len() % 2 == 1 {
        return Err(Error::BadModelParams(
            "endpoints must be words of equal even length".into(),
        ));
    }
    let n = s.len() / 2;
    let miss = || Error::BadModelParams(format!("level {n} is not in the supertree"));
    let a = tree.ancestors(s).ok_or_else(miss)?;
    let b = tree.ancestors(t).ok_or_else(miss)?;
    Ok(path_from(tree, n, &a, &b))
}

fn path_from(tree: &Supertree, n: usize, a: &[usize], b: &[usize]) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        // left part at level n-i is a[i]; right part at level i is b[n-i]
        let mut w = tree.levels[n - i][a[i]].clone();
        w.extend_from_slice(&tree.levels[i][b[n - i]]);
        if out.last() != Some(&w) {
            out.push(w);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalPathStats {
    /// Longest path, in edges.
    pub max_len: usize,
    pub rho: BigRational,
    /// `1 / (rho * max_len)`
    pub bound: BigRational,
    /// Largest number of paths crossing one edge.
    pub max_edge_paths: u64,
    /// Largest number of paths crossing one edge at the same step index.
    pub max_step_paths: u64,
}

/// Congestion of the canonical paths in a uniform-stationary chain; every
/// path edge must be a transition of `chain`.
pub fn canonical_path_bound(tree: &Supertree, chain: &MarkovChain) -> Result<CanonicalPathStats> {
    if chain.kind == ChainKind::PairFlip || matches!(chain.kind, ChainKind::Hopping(_)) {
        return Err(Error::BadModelParams(
            "canonical paths use pair-displacing moves".into(),
        ));
    }
    let n = chain.states.first().map(|w| w.len() / 2).unwrap_or(0);
    if n == 0 || n > tree.nmax() {
        return Err(Error::BadModelParams(format!("supertree has no level {n}")));
    }
    let anc: Vec<Vec<usize>> = chain
        .states
        .iter()
        .map(|w| {
            tree.ancestors(w)
                .ok_or_else(|| Error::BadModelParams("state missing from supertree".into()))
        })
        .collect::<Result<_>>()?;
    let mut load: HashMap<(usize, usize), u64> = HashMap::new();
    let mut per_step: HashMap<(usize, usize, usize), u64> = HashMap::new();
    let mut max_len = 0;
    for (s, a) in anc.iter().enumerate() {
        for (t, b) in anc.iter().enumerate() {
            if s == t {
                continue;
            }
            let p = path_from(tree, n, a, b);
            max_len = max_len.max(p.len() - 1);
            let mut prev = s;
            for (step, w) in p[1..].iter().enumerate() {
                let cur = chain
                    .index_of(w)
                    .ok_or_else(|| Error::BadModelParams("path left the state space".into()))?;
                *load.entry((prev, cur)).or_insert(0) += 1;
                *per_step.entry((prev, cur, step)).or_insert(0) += 1;
                prev = cur;
            }
        }
    }
    let w = chain.len() as u64;
    let mut rho = BigRational::zero();
    let mut max_edge_paths = 0;
    let mut edges: Vec<_> = load.into_iter().collect();
    edges.sort_unstable();
    for ((a, b), c) in edges {
        let p = chain.get(a, b);
        if p.is_zero() {
            return Err(Error::BadModelParams(format!(
                "{:?} -> {:?} is not a chain move",
                chain.states[a], chain.states[b]
            )));
        }
        max_edge_paths = max_edge_paths.max(c);
        let r = BigRational::from_integer(BigInt::from(c)) / (p * BigInt::from(w));
        if r > rho {
            rho = r;
        }
    }
    let bound = if rho.is_zero() {
        BigRational::zero()
    } else {
        (&rho * BigInt::from(max_len as u64)).recip()
    };
    let max_step_paths = per_step.values().copied().max().unwrap_or(0);
    Ok(CanonicalPathStats {
        max_len,
        rho,
        bound,
        max_edge_paths,
        max_step_paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::{pd_chain, rat};

    fn word(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn q_values() {
        for d in 3..=6u32 {
            let q = q_table(d, 8).unwrap();
            assert_eq!(q.get(1, 3).unwrap(), &rat(d - 1, 2 * d - 1));
            assert_eq!(q.get(2, 3).unwrap(), &rat(1, 1));
            assert!(q.ends_at_one(), "d={d}");
            assert!(q
                .rows
                .iter()
                .flatten()
                .all(|x| *x >= rat(0, 1) && *x <= rat(1, 1)));
        }
    }

    #[test]
    fn tree_children() {
        let t = build_supertree(3, 4, 1 << 20).unwrap();
        assert_eq!(t.children_counts(0), vec![3]);
        assert!(t.children_counts(1).iter().all(|&c| c == 5));
        for k in 0..4 {
            assert!(t.children_counts(k).iter().all(|&c| (1..=8).contains(&c)));
        }
        for k in 1..=4 {
            for (c, &p) in t.parent[k].iter().enumerate() {
                assert!(erase_parents(&t.levels[k][c]).contains(&t.levels[k - 1][p]));
            }
        }
        assert!(t.export_parent_list().starts_with("11\t-\n"));
    }

    #[test]
    fn fig8_path() {
        let t = build_supertree(3, 2, 1 << 20).unwrap();
        let p = canonical_path(&t, &word("1331"), &word("2112")).unwrap();
        assert_eq!(p, vec![word("1331"), word("1122"), word("2112")]);
    }

    #[test]
    fn bound_below_gap() {
        let t = build_supertree(3, 3, 1 << 20).unwrap();
        for n in 1..=3 {
            let c = pd_chain(3, n, 1 << 20).unwrap();
            let st = canonical_path_bound(&t, &c).unwrap();
            assert!(st.max_len <= n);
            let (b, g) = (
                crate::counting::rational_to_f64(&st.bound),
                c.gap().unwrap(),
            );
            assert!(st.max_step_paths <= 8u64.pow(n as u32 - 1));
            assert!(b <= g + 1e-12, "{b} {g}");
        }
    }
}
