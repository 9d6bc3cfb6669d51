//! Restricted Hamiltonians of the PF, Motzkin and Fredkin chains, their low
//! spectra, gap fits, the twisted trial state and the pair-counting
//! perturbation.
//!
//! Every rewriting rule `a <-> b` contributes `1/2 |a - b><a - b|`, so each
//! transition is an off-diagonal `-1/2` and adds `+1/2` to the diagonal of
//! its source word.

pub mod solver;

use std::collections::{BTreeMap, HashMap};

use crate::counting::rational_to_f64;
use crate::entanglement::{entropy, schmidt_spectrum, svd_entropy, SchmidtModel};
use crate::error::{check_size, Error, Result};
use crate::paircount::pf_pairs;
use crate::words::{bfs_closure, for_each_flip, profile, IrreducibleString, SubspaceLabel, Word};

pub use solver::{
    low_spectrum, power_law_fit, spectral_gap, LowSpectrum, Method, SolverOptions, SymOp,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Letters `1..=d`.
    Pf { d: u8 },
    /// Letters `0` (empty), `1` (L), `2` (R).
    Motzkin,
    /// Letters `1..=s` are `L_c`, `s+1..=2s` are `R_c`.
    Fredkin { s: u8 },
}

impl Model {
    fn validate(&self) -> Result<()> {
        match *self {
            Model::Pf { d } if !(2..=crate::words::MAX_D).contains(&d) => {
                Err(Error::BadAlphabet(d as u32))
            }
            Model::Fredkin { s } if s == 0 || s > 7 => {
                Err(Error::BadModelParams(format!("s = {s}")))
            }
            _ => Ok(()),
        }
    }

    /// Smallest and largest letter.
    pub fn letters(&self) -> (u8, u8) {
        match *self {
            Model::Pf { d } => (1, d),
            Model::Motzkin => (0, 2),
            Model::Fredkin { s } => (1, 2 * s),
        }
    }

    fn is_open(&self, c: u8) -> bool {
        match *self {
            Model::Pf { .. } => false,
            Model::Motzkin => c == 1,
            Model::Fredkin { s } => c <= s,
        }
    }

    fn is_close(&self, c: u8) -> bool {
        match *self {
            Model::Pf { .. } => false,
            Model::Motzkin => c == 2,
            Model::Fredkin { s } => c > s,
        }
    }

    fn matches(&self, open: u8, close: u8) -> bool {
        match *self {
            Model::Pf { .. } => open == close,
            Model::Motzkin => open == 1 && close == 2,
            Model::Fredkin { s } => open <= s && close == open + s,
        }
    }

    /// Residue of the left-to-right stack reduction.
    pub fn reduce(&self, w: &[u8]) -> Vec<u8> {
        let mut st: Vec<u8> = Vec::with_capacity(w.len());
        for &c in w {
            match *self {
                Model::Pf { .. } => {
                    if st.last() == Some(&c) {
                        st.pop();
                    } else {
                        st.push(c);
                    }
                }
                _ => {
                    if c == 0 {
                        continue;
                    }
                    if self.is_close(c) && st.last().is_some_and(|&t| self.matches(t, c)) {
                        st.pop();
                    } else {
                        st.push(c);
                    }
                }
            }
        }
        st
    }

    /// Calls `f(target)` once per rewriting term acting on `w`.
    pub fn for_each_transition(&self, w: &[u8], mut f: impl FnMut(&[u8])) {
        let mut buf = w.to_vec();
        match *self {
            Model::Pf { d } => for_each_flip(d, w, |i, t| {
                buf[i] = t;
                buf[i + 1] = t;
                f(&buf);
                buf[i] = w[i];
                buf[i + 1] = w[i + 1];
            }),
            Model::Motzkin => {
                for i in 0..w.len().saturating_sub(1) {
                    let to = match (w[i], w[i + 1]) {
                        (0, 0) => (1, 2),
                        (1, 2) => (0, 0),
                        (0, c) => (c, 0),
                        (c, 0) => (0, c),
                        _ => continue,
                    };
                    buf[i] = to.0;
                    buf[i + 1] = to.1;
                    f(&buf);
                    buf[i] = w[i];
                    buf[i + 1] = w[i + 1];
                }
            }
            Model::Fredkin { s } => {
                let peak = |i: usize| i + 1 < w.len() && self.matches(w[i], w[i + 1]);
                for i in 0..w.len().saturating_sub(1) {
                    if peak(i) {
                        // recolor the peak
                        for c in 1..=s {
                            if c != w[i] {
                                buf[i] = c;
                                buf[i + 1] = c + s;
                                f(&buf);
                            }
                        }
                        buf[i] = w[i];
                        buf[i + 1] = w[i + 1];
                    }
                }
                for i in 0..w.len().saturating_sub(2) {
                    // x P <-> P x, for a peak P and any bracket x
                    if peak(i + 1) {
                        buf[i] = w[i + 1];
                        buf[i + 1] = w[i + 2];
                        buf[i + 2] = w[i];
                        f(&buf);
                    }
                    if peak(i) {
                        buf[i] = w[i + 2];
                        buf[i + 1] = w[i];
                        buf[i + 2] = w[i + 1];
                        f(&buf);
                    }
                    buf[i..i + 3].copy_from_slice(&w[i..i + 3]);
                }
            }
        }
    }

    /// Pairs (PF) or peaks (Fredkin) in `w`; the quantity the `delta` term rewards.
    pub fn reward_count(&self, w: &[u8]) -> usize {
        match *self {
            Model::Pf { .. } => w.windows(2).filter(|p| p[0] == p[1]).count(),
            Model::Fredkin { .. } => w.windows(2).filter(|p| self.matches(p[0], p[1])).count(),
            Model::Motzkin => 0,
        }
    }

    /// Endpoint penalty: a closing bracket first, an opening bracket last.
    pub fn ends_penalty(&self, w: &[u8]) -> f64 {
        let mut e = 0.0;
        if w.first().is_some_and(|&c| self.is_close(c)) {
            e += 1.0;
        }
        if w.last().is_some_and(|&c| self.is_open(c)) {
            e += 1.0;
        }
        e
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subspace {
    /// Closure of the canonical seed with this irreducible string.
    Reduced(Vec<u8>),
    /// Every word of the full space whose reduction equals the string.
    Filtered(Vec<u8>),
    /// The full `q^N` space.
    Full,
}

impl Subspace {
    pub fn balanced() -> Self {
        Subspace::Reduced(Vec::new())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianParams {
    pub model: Model,
    pub n_sites: usize,
    pub subspace: Subspace,
    /// Weight of the pair (PF) or peak (Fredkin) reward.
    pub delta: f64,
    pub with_ends: bool,
    pub limit: u128,
}

impl HamiltonianParams {
    pub fn new(model: Model, n_sites: usize) -> Self {
        HamiltonianParams {
            model,
            n_sites,
            subspace: Subspace::balanced(),
            delta: 0.0,
            with_ends: false,
            limit: crate::words::DEFAULT_ENUM_LIMIT,
        }
    }
}

/// A symmetric sparse matrix over a sorted word basis.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    pub dim: usize,
    pub basis: Vec<Vec<u8>>,
    /// Coalesced `(row, col, value)`, sorted by row then column.
    pub entries: Vec<(usize, usize, f64)>,
    row_start: Vec<usize>,
}

impl SparseOperator {
    pub fn from_triplets(basis: Vec<Vec<u8>>, mut t: Vec<(usize, usize, f64)>) -> Self {
        t.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut entries: Vec<(usize, usize, f64)> = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            match entries.last_mut() {
                Some(e) if e.0 == r && e.1 == c => e.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0.0);
        let dim = basis.len();
        let mut row_start = vec![0; dim + 1];
        for e in &entries {
            row_start[e.0 + 1] += 1;
        }
        for i in 0..dim {
            row_start[i + 1] += row_start[i];
        }
        SparseOperator {
            dim,
            basis,
            entries,
            row_start,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let row = &self.entries[self.row_start[r]..self.row_start[r + 1]];
        row.binary_search_by_key(&c, |e| e.1)
            .map(|i| row[i].2)
            .unwrap_or(0.0)
    }

    pub fn row(&self, r: usize) -> &[(usize, usize, f64)] {
        &self.entries[self.row_start[r]..self.row_start[r + 1]]
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|&(r, c, v)| self.get(c, r) == v)
    }

    /// Coordinate text: `dim` on the first line, then `row col value`.
    pub fn export_coo(&self) -> String {
        let mut s = format!("{}\n", self.dim);
        for (r, c, v) in &self.entries {
            s.push_str(&format!("{r} {c} {v}\n"));
        }
        s
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.basis.binary_search_by(|b| b.as_slice().cmp(w)).ok()
    }
}

impl SymOp for SparseOperator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            *yr = self.row(r).iter().map(|&(_, c, v)| v * x[c]).sum();
        }
    }
}

fn full_space(model: Model, n: usize, limit: u128) -> Result<Vec<Vec<u8>>> {
    let (lo, hi) = model.letters();
    let q = (hi - lo + 1) as u128;
    check_size(
        "full space",
        q.checked_pow(n as u32).unwrap_or(u128::MAX),
        limit,
    )?;
    let mut out = Vec::new();
    let mut cur = vec![lo; n];
    loop {
        out.push(cur.clone());
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if cur[pos] < hi {
                cur[pos] += 1;
                break;
            }
            cur[pos] = lo;
        }
    }
}

fn seed(model: Model, n: usize, s: &[u8]) -> Result<Vec<u8>> {
    let bad = || {
        Error::BadLabel(format!(
            "{s:?} is not an irreducible string of {model:?} at N = {n}"
        ))
    };
    if model.reduce(s) != s || s.len() > n {
        return Err(bad());
    }
    match model {
        Model::Pf { d } => {
            if (n - s.len()) % 2 != 0 {
                return Err(bad());
            }
            Ok(
                SubspaceLabel::new(n, IrreducibleString::new(d, s.to_vec())?)?
                    .seed()
                    .letters()
                    .to_vec(),
            )
        }
        Model::Motzkin | Model::Fredkin { .. } => {
            let p = s.iter().take_while(|&&c| model.is_close(c)).count();
            if s[p..].iter().any(|&c| !model.is_open(c)) {
                return Err(bad());
            }
            let free = n - s.len();
            let mut w = s[..p].to_vec();
            match model {
                Model::Motzkin => w.extend(std::iter::repeat_n(0, free)),
                Model::Fredkin { s: colors } => {
                    if free % 2 != 0 {
                        return Err(bad());
                    }
                    for _ in 0..free / 2 {
                        w.extend([1, 1 + colors]);
                    }
                }
                Model::Pf { .. } => unreachable!(),
            }
            w.extend_from_slice(&s[p..]);
            Ok(w)
        }
    }
}

/// Basis of the requested subspace, sorted.
pub fn subspace_basis(model: Model, n: usize, sub: &Subspace, limit: u128) -> Result<Vec<Vec<u8>>> {
    model.validate()?;
    match sub {
        Subspace::Full => full_space(model, n, limit),
        Subspace::Filtered(s) => {
            let all = full_space(model, n, limit)?;
            Ok(all.into_iter().filter(|w| model.reduce(w) == *s).collect())
        }
        Subspace::Reduced(s) => {
            let start = seed(model, n, s)?;
            if let Model::Pf { d } = model {
                let label = SubspaceLabel::new(n, IrreducibleString::new(d, s.clone())?)?;
                return Ok(crate::words::enumerate_subspace(&label, limit)?
                    .into_iter()
                    .map(|w| w.letters().to_vec())
                    .collect());
            }
            bfs_closure(start, limit, |w, out| {
                model.for_each_transition(w, |t| out.push(t.to_vec()))
            })
        }
    }
}

/// The named Hamiltonian restricted to the subspace, in its sorted word basis.
pub fn build_hamiltonian(p: &HamiltonianParams) -> Result<SparseOperator> {
    if p.model == Model::Motzkin && p.delta != 0.0 {
        return Err(Error::BadModelParams(
            "the Motzkin chain has no reward term here".into(),
        ));
    }
    let basis = subspace_basis(p.model, p.n_sites, &p.subspace, p.limit)?;
    let index: HashMap<&[u8], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let mut t = Vec::new();
    for (a, w) in basis.iter().enumerate() {
        let mut diag = -p.delta * p.model.reward_count(w) as f64;
        if p.with_ends {
            diag += p.model.ends_penalty(w);
        }
        let mut missing = None;
        p.model.for_each_transition(w, |v| {
            diag += 0.5;
            match index.get(v) {
                Some(&b) => t.push((a, b, -0.5)),
                None => missing = Some(v.to_vec()),
            }
        });
        if let Some(v) = missing {
            return Err(Error::BadLabel(format!(
                "subspace not closed: {w:?} -> {v:?}"
            )));
        }
        t.push((a, a, diag));
    }
    Ok(SparseOperator::from_triplets(basis, t))
}

#[derive(Debug, Clone)]
pub struct GapReport {
    pub model: Model,
    /// `(N, dim, gap)`
    pub points: Vec<(usize, usize, f64)>,
    pub exponent: f64,
    pub stderr: f64,
    pub window: (usize, usize),
}

/// Gap of the `params` operator: `lambda_1 - lambda_0`.
pub fn subspace_gap(p: &HamiltonianParams) -> Result<(usize, f64)> {
    let op = build_hamiltonian(p)?;
    let m = 6.min(op.dim);
    let spec = low_spectrum(&op, m, &SolverOptions::default())?;
    let g = spectral_gap(&spec.values)
        .ok_or_else(|| Error::BadModelParams("no gap in a one-level spectrum".into()))?;
    Ok((op.dim, g))
}

/// Fits `gap ~ N^exponent` in the given subspace over `sizes`.
pub fn gap_scaling_fit(
    model: Model,
    subspace: &Subspace,
    with_ends: bool,
    sizes: &[usize],
) -> Result<GapReport> {
    if sizes.len() < 3 {
        return Err(Error::BadModelParams(
            "gap fit needs at least 3 sizes".into(),
        ));
    }
    let mut points = Vec::new();
    for &n in sizes {
        let mut p = HamiltonianParams::new(model, n);
        p.subspace = subspace.clone();
        p.with_ends = with_ends;
        let (dim, g) = subspace_gap(&p)?;
        points.push((n, dim, g));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0 as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.2).collect();
    let (exponent, stderr, _) = power_law_fit(&xs, &ys)?;
    Ok(GapReport {
        model,
        points,
        exponent,
        stderr,
        window: (sizes[0], *sizes.last().unwrap()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwistedStateReport {
    pub n: usize,
    pub theta: f64,
    pub energy: f64,
    pub overlap_sq: f64,
    /// Ordered area-changing transitions per word.
    pub area_changing_per_word: f64,
    /// `4 pi^2 theta^2` times the above; dominates `energy` since `(1 - cos x)/2 <= x^2/4`.
    pub energy_bound: f64,
}

/// `n^{-3/2} / sqrt(10/3 - pi)`
pub fn default_theta(n: usize) -> f64 {
    (n as f64).powf(-1.5) / (10.0 / 3.0 - std::f64::consts::PI).sqrt()
}

pub fn twisted_state(d: u8, n: usize, limit: u128) -> Result<TwistedStateReport> {
    twisted_state_with_theta(d, n, default_theta(n), limit)
}

/// Uniform amplitudes over fully reducible words of length `2n`, phased by
/// `exp(2 pi i theta A)` with `A` the area under the reduction profile.
pub fn twisted_state_with_theta(
    d: u8,
    n: usize,
    theta: f64,
    limit: u128,
) -> Result<TwistedStateReport> {
    let op = build_hamiltonian(&HamiltonianParams {
        limit,
        ..HamiltonianParams::new(Model::Pf { d }, 2 * n)
    })?;
    let area: Vec<f64> = op
        .basis
        .iter()
        .map(|w| profile(&Word::from_raw(d, w.clone())).area())
        .collect();
    let tau = 2.0 * std::f64::consts::PI * theta;
    let mut e = 0.0;
    let mut changing = 0.0;
    for &(a, b, v) in &op.entries {
        e += v * (tau * (area[b] - area[a])).cos();
        if a != b && area[a] != area[b] {
            changing += -2.0 * v;
        }
    }
    let (mut re, mut im) = (0.0, 0.0);
    for &x in &area {
        re += (tau * x).cos();
        im += (tau * x).sin();
    }
    let w = op.dim as f64;
    Ok(TwistedStateReport {
        n,
        theta,
        energy: e / w,
        overlap_sq: (re * re + im * im) / (w * w),
        area_changing_per_word: changing / w,
        energy_bound: tau * tau * changing / w,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceEnergy {
    pub label: Vec<u8>,
    pub dim: usize,
    pub lambda0: f64,
    pub lambda1: Option<f64>,
    /// `-delta * f` from the exact average pair count.
    pub first_order: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationReport {
    pub d: u8,
    pub n_sites: usize,
    pub delta: f64,
    pub subspaces: Vec<SubspaceEnergy>,
    /// Second-lowest level overall minus the lowest.
    pub global_gap: f64,
    /// The lowest level lies only in the fully reducible subspace, non-degenerate.
    pub unique_in_fully_reducible: bool,
    pub max_residual: f64,
}

/// Exact diagonalization of `H_flip - delta * pairs` in every subspace.
pub fn perturbation_analysis(
    d: u8,
    n_sites: usize,
    delta: f64,
    limit: u128,
) -> Result<PerturbationReport> {
    let mut subspaces = Vec::new();
    let mut k = n_sites % 2;
    while k <= n_sites {
        let n = ((n_sites - k) / 2) as u64;
        let f = rational_to_f64(&pf_pairs(d as u32, n, k as u64).average);
        for s in IrreducibleString::all(d, k) {
            let p = HamiltonianParams {
                subspace: Subspace::Reduced(s.letters().to_vec()),
                delta,
                limit,
                ..HamiltonianParams::new(Model::Pf { d }, n_sites)
            };
            let op = build_hamiltonian(&p)?;
            let spec = low_spectrum(&op, 2.min(op.dim), &SolverOptions::default())?;
            let first_order = -delta * f;
            subspaces.push(SubspaceEnergy {
                label: s.letters().to_vec(),
                dim: op.dim,
                lambda0: spec.values[0],
                lambda1: spec.values.get(1).copied(),
                first_order,
                residual: (spec.values[0] - first_order).abs(),
            });
        }
        k += 2;
    }
    let mut levels: Vec<(f64, bool)> = Vec::new();
    for s in &subspaces {
        levels.push((s.lambda0, s.label.is_empty()));
        if let Some(l1) = s.lambda1 {
            levels.push((l1, s.label.is_empty()));
        }
    }
    levels.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let global_gap = levels[1].0 - levels[0].0;
    Ok(PerturbationReport {
        d,
        n_sites,
        delta,
        unique_in_fully_reducible: levels[0].1 && global_gap > 1e-12,
        max_residual: subspaces.iter().map(|s| s.residual).fold(0.0, f64::max),
        subspaces,
        global_gap,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedEntropy {
    pub unperturbed_bits: f64,
    pub perturbed_bits: f64,
    pub difference: f64,
}

/// Half-chain entropy of the fully reducible ground vector of `H_flip - delta * pairs`.
pub fn perturbed_entropy(
    d: u8,
    n_sites: usize,
    delta: f64,
    limit: u128,
) -> Result<PerturbedEntropy> {
    if n_sites > 16 {
        return Err(Error::SizeLimitExceeded {
            what: "N".into(),
            size: n_sites as u128,
            limit: 16,
        });
    }
    let p = HamiltonianParams {
        delta,
        limit,
        ..HamiltonianParams::new(Model::Pf { d }, n_sites)
    };
    let op = build_hamiltonian(&p)?;
    let spec = low_spectrum(
        &op,
        1,
        &SolverOptions {
            want_vectors: true,
            ..Default::default()
        },
    )?;
    let v = &spec.vectors.as_ref().unwrap()[0];
    let half = n_sites / 2;
    let state: Vec<(&[u8], &[u8], f64)> = op
        .basis
        .iter()
        .zip(v)
        .map(|(w, &a)| {
            let (l, r) = w.split_at(half);
            (l, r, a)
        })
        .collect();
    let perturbed_bits = svd_entropy(&state).entropy_bits;
    let unperturbed_bits = entropy(&schmidt_spectrum(
        SchmidtModel::Pf { d: d as u32 },
        n_sites,
    )?)?
    .entropy_bits;
    Ok(PerturbedEntropy {
        unperturbed_bits,
        perturbed_bits,
        difference: (perturbed_bits - unperturbed_bits).abs(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectorReport {
    /// Ground energy per reduced string.
    pub ground: BTreeMap<Vec<u8>, f64>,
    pub lowest_label: Vec<u8>,
    /// Distance of the next sector's ground energy from the lowest.
    pub margin: f64,
}

/// Ground energy of every reduced-string sector of the full space, without
/// endpoint terms.
pub fn sector_ground_energies(
    model: Model,
    n_sites: usize,
    delta: f64,
    limit: u128,
) -> Result<SectorReport> {
    let all = full_space(model, n_sites, limit)?;
    let mut labels: Vec<Vec<u8>> = all.iter().map(|w| model.reduce(w)).collect();
    labels.sort();
    labels.dedup();
    let mut ground = BTreeMap::new();
    for l in labels {
        let p = HamiltonianParams {
            subspace: Subspace::Filtered(l.clone()),
            delta,
            limit,
            ..HamiltonianParams::new(model, n_sites)
        };
        let op = build_hamiltonian(&p)?;
        let spec = low_spectrum(&op, 1, &SolverOptions::default())?;
        ground.insert(l, spec.values[0]);
    }
    let mut v: Vec<(&Vec<u8>, f64)> = ground.iter().map(|(k, &e)| (k, e)).collect();
    v.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let lowest_label = v[0].0.clone();
    let margin = v.get(1).map(|x| x.1 - v[0].1).unwrap_or(f64::INFINITY);
    Ok(SectorReport {
        ground,
        lowest_label,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(model: Model, n: usize) -> HamiltonianParams {
        HamiltonianParams::new(model, n)
    }

    #[test]
    fn pf_small_operator() {
        let op = build_hamiltonian(&params(Model::Pf { d: 3 }, 4)).unwrap();
        assert_eq!(op.dim, 15);
        assert!(op.is_symmetric());
        let s = low_spectrum(&op, 2, &SolverOptions::default()).unwrap();
        assert!(s.values[0].abs() < 1e-12);
    }

    #[test]
    fn fredkin_and_motzkin_dims() {
        let op = build_hamiltonian(&params(Model::Fredkin { s: 1 }, 8)).unwrap();
        assert_eq!(op.dim, 14);
        let op = build_hamiltonian(&params(Model::Fredkin { s: 2 }, 6)).unwrap();
        assert_eq!(op.dim, 5 * 8);
        let op = build_hamiltonian(&params(Model::Motzkin, 4)).unwrap();
        assert_eq!(op.dim, 9);
    }

    #[test]
    fn reduced_and_filtered_agree() {
        for (model, n, s) in [
            (Model::Pf { d: 3 }, 6, vec![1, 2]),
            (Model::Motzkin, 5, vec![2, 1]),
            (Model::Fredkin { s: 1 }, 6, vec![2, 2]),
            (Model::Fredkin { s: 2 }, 6, vec![]),
        ] {
            let a = subspace_basis(model, n, &Subspace::Reduced(s.clone()), 1 << 20).unwrap();
            let b = subspace_basis(model, n, &Subspace::Filtered(s), 1 << 20).unwrap();
            assert_eq!(a, b, "{model:?}");
        }
    }

    #[test]
    fn motzkin_with_ends_unique_ground() {
        let p = HamiltonianParams {
            subspace: Subspace::Full,
            with_ends: true,
            ..params(Model::Motzkin, 2)
        };
        let op = build_hamiltonian(&p).unwrap();
        let s = low_spectrum(
            &op,
            2,
            &SolverOptions {
                want_vectors: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(s.values[0].abs() < 1e-12 && s.values[1] > 1e-3);
        let v = &s.vectors.unwrap()[0];
        let good = [op.index_of(&[0, 0]).unwrap(), op.index_of(&[1, 2]).unwrap()];
        for (i, x) in v.iter().enumerate() {
            let want = if good.contains(&i) {
                0.5f64.sqrt()
            } else {
                0.0
            };
            assert!((x.abs() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn export_format() {
        let op = build_hamiltonian(&params(Model::Pf { d: 2 }, 2)).unwrap();
        assert_eq!(op.export_coo(), "2\n0 0 0.5\n0 1 -0.5\n1 0 -0.5\n1 1 0.5\n");
    }

    #[test]
    fn bad_labels() {
        let p = HamiltonianParams {
            subspace: Subspace::Reduced(vec![1, 1]),
            ..params(Model::Pf { d: 3 }, 4)
        };
        assert!(build_hamiltonian(&p).is_err());
        let p = HamiltonianParams {
            subspace: Subspace::Reduced(vec![1, 2]),
            ..params(Model::Motzkin, 4)
        };
        assert!(build_hamiltonian(&p).is_err());
    }

    #[test]
    fn twisted_phase_free_limit() {
        let r = twisted_state_with_theta(3, 3, 0.0, 1 << 20).unwrap();
        assert!(r.energy.abs() < 1e-12 && (r.overlap_sq - 1.0).abs() < 1e-12);
    }
}
