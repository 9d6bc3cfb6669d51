//! Reproduction suite: one check per published number or inequality, each
//! reporting the expected value, what was computed and whether it passed.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::counting::{binomial, catalan, pf_count, ratio_tables, rational_to_f64};
use crate::entanglement::{
    d2_schmidt_variance, entropy, entropy_comparison, ground_state_entropy_oracle,
    schmidt_spectrum, SchmidtModel,
};
use crate::error::{Error, Result};
use crate::markov::{
    self, build_supertree, canonical_path_bound, comparison_bound, dirichlet_sandwich, pd_chain,
    pf_gap_relation, q_table,
};
use crate::paircount::{
    self, bivariate, d2_pair_average, dyck_peaks, pf_pairs, pf_pairs_table, pf_pairs_with_table,
    rescaled_subspace_gap,
};
use crate::spectra::{self, gap_scaling_fit, HamiltonianParams, Model, Subspace};
use crate::words::IrreducibleString;

pub const CLAIM_COUNT: u8 = 14;
const LIMIT: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimResult {
    pub id: u8,
    pub title: &'static str,
    pub expected: String,
    pub computed: String,
    pub tolerance: String,
    pub pass: bool,
    pub seconds: f64,
}

impl ClaimResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {}: expected {}; computed {}; tolerance {} ({:.2}s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.expected,
            self.computed,
            self.tolerance,
            self.seconds
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReproReport {
    pub results: Vec<ClaimResult>,
}

impl ReproReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

struct Outcome {
    expected: String,
    computed: String,
    tolerance: String,
    pass: bool,
}

fn outcome(
    expected: impl Into<String>,
    computed: impl Into<String>,
    tolerance: impl Into<String>,
    pass: bool,
) -> Outcome {
    Outcome {
        expected: expected.into(),
        computed: computed.into(),
        tolerance: tolerance.into(),
        pass,
    }
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "word-count table",
        2 => "pair-count table",
        3 => "exhaustive enumeration",
        4 => "closed-form identities",
        5 => "d=2 spectral gap",
        6 => "gap exponents",
        7 => "entropy ratio at N=8000",
        8 => "entropy bounds",
        9 => "Schmidt spectrum vs SVD",
        10 => "degeneracy breaking",
        11 => "supertree",
        12 => "Markov gap bounds",
        13 => "twisted state",
        14 => "asymptotic pair averages",
        _ => "unknown",
    }
}

pub fn run_claim(id: u8) -> ClaimResult {
    let start = Instant::now();
    let r = match id {
        1 => claim_word_table(),
        2 => claim_pair_table(),
        3 => claim_brute_force(),
        4 => claim_closed_forms(),
        5 => claim_d2_gap(),
        6 => claim_gap_fits(),
        7 => claim_entropy_ratio(),
        8 => claim_entropy_bounds(),
        9 => claim_oracle_entropy(),
        10 => claim_degeneracy(),
        11 => claim_supertree(),
        12 => claim_markov(),
        13 => claim_twisted(),
        14 => claim_asymptotics(),
        _ => Err(Error::BadModelParams(format!("no claim {id}"))),
    };
    let o = r.unwrap_or_else(|e| outcome("-", format!("error: {e}"), "-", false));
    ClaimResult {
        id,
        title: title(id),
        expected: o.expected,
        computed: o.computed,
        tolerance: o.tolerance,
        pass: o.pass,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_suite(ids: &[u8]) -> ReproReport {
    ReproReport {
        results: ids.iter().map(|&i| run_claim(i)).collect(),
    }
}

pub fn run_all() -> ReproReport {
    run_suite(&(1..=CLAIM_COUNT).collect::<Vec<_>>())
}

const WORDS_K0: [u64; 10] = [1, 3, 15, 87, 543, 3543, 23823, 163719, 1143999, 8099511];
const WORDS_K2: [u64; 10] = [0, 1, 7, 47, 319, 2199, 15375, 108807, 777919, 5610167];
const WORDS_K4: [u64; 10] = [0, 0, 1, 11, 95, 759, 5871, 44743, 338623, 2555063];
const PAIRS_K0: [u64; 10] = [
    0, 3, 27, 225, 1827, 14661, 116919, 929097, 7367355, 58343949,
];
const PAIRS_K2: [u64; 10] = [0, 0, 9, 105, 987, 8613, 72567, 599625, 4896315, 39673869];
const PAIRS_K4: [u64; 10] = [0, 0, 0, 15, 231, 2565, 25047, 228969, 2013435, 17269773];

/// Table columns are half the total length.
fn table_row(k: u64, f: impl Fn(u64, u64) -> BigUint) -> Vec<u64> {
    (0..10u64)
        .map(|c| {
            paircount::table_column_to_pairs(c, k)
                .map_or(0, |n| f(n, k).to_u64().unwrap_or(u64::MAX))
        })
        .collect()
}

fn claim_word_table() -> Result<Outcome> {
    let mut bad = 0;
    for (k, want) in [(0, WORDS_K0), (2, WORDS_K2), (4, WORDS_K4)] {
        bad += table_row(k, |n, k| pf_count(3, n, k))
            .iter()
            .zip(want)
            .filter(|(a, b)| **a != *b)
            .count();
    }
    Ok(outcome(
        "30 table entries",
        format!("{} mismatches", bad),
        "exact",
        bad == 0,
    ))
}

fn claim_pair_table() -> Result<Outcome> {
    let mut bad = 0;
    for (k, want) in [(0, PAIRS_K0), (2, PAIRS_K2), (4, PAIRS_K4)] {
        bad += table_row(k, |n, k| pf_pairs(3, n, k).total)
            .iter()
            .zip(want)
            .filter(|(a, b)| **a != *b)
            .count();
    }
    Ok(outcome(
        "30 table entries",
        format!("{} mismatches", bad),
        "exact",
        bad == 0,
    ))
}

/// Per reduced length `k`: (words, adjacent equal pairs), over all `d^len` words.
pub fn brute_force_pf(d: u8, len: usize) -> Vec<(u64, u64)> {
    let mut out = vec![(0u64, 0u64); len + 1];
    let mut w = vec![1u8; len];
    let mut stack = Vec::with_capacity(len);
    loop {
        stack.clear();
        for &c in &w {
            if stack.last() == Some(&c) {
                stack.pop();
            } else {
                stack.push(c);
            }
        }
        let pairs = w.windows(2).filter(|p| p[0] == p[1]).count() as u64;
        let e = &mut out[stack.len()];
        e.0 += 1;
        e.1 += pairs;
        let mut i = 0;
        while i < len && w[i] == d {
            w[i] = 1;
            i += 1;
        }
        if i == len {
            return out;
        }
        w[i] += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DyckTotals {
    pub words: u64,
    pub peaks: u64,
    pub valleys: u64,
}

/// `s`-colored paths of length `len` with unmatched up steps colored 1,
/// indexed by final height; valleys count same-color `down, up` pairs.
pub fn brute_force_dyck(s: u8, len: usize) -> Vec<DyckTotals> {
    #[derive(Clone, Copy, PartialEq)]
    enum Step {
        Up(u8, bool),
        Down(u8),
    }
    fn rec(
        s: u8,
        left: usize,
        stack: &mut Vec<(u8, bool)>,
        path: &mut Vec<Step>,
        out: &mut [DyckTotals],
    ) {
        if left == 0 {
            if stack.iter().any(|e| !e.1) {
                return;
            }
            let t = &mut out[stack.len()];
            t.words += 1;
            for p in path.windows(2) {
                match (p[0], p[1]) {
                    (Step::Up(..), Step::Down(_)) => t.peaks += 1,
                    (Step::Down(a), Step::Up(b, _)) if a == b => t.valleys += 1,
                    _ => {}
                }
            }
            return;
        }
        let open = stack.iter().filter(|e| !e.1).count();
        if open + 2 <= left {
            // matched up steps must close later; an extra step blocks everything beneath it
            for c in 1..=s {
                stack.push((c, false));
                path.push(Step::Up(c, false));
                rec(s, left - 1, stack, path, out);
                path.pop();
                stack.pop();
            }
        }
        if open == 0 {
            stack.push((1, true));
            path.push(Step::Up(1, true));
            rec(s, left - 1, stack, path, out);
            path.pop();
            stack.pop();
        }
        if let Some(&(c, false)) = stack.last() {
            stack.pop();
            path.push(Step::Down(c));
            rec(s, left - 1, stack, path, out);
            path.pop();
            stack.push((c, false));
        }
    }
    let mut out = vec![DyckTotals::default(); len + 1];
    rec(s, len, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn claim_brute_force() -> Result<Outcome> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for d in 2..=4u8 {
        for len in 0..=12usize {
            let brute = brute_force_pf(d, len);
            for (k, &(words, pairs)) in brute.iter().enumerate() {
                if (len - k) % 2 == 1 {
                    if words != 0 {
                        bad.push(format!("pf d={d} len={len} k={k}"));
                    }
                    continue;
                }
                let n = ((len - k) / 2) as u64;
                let labels = BigUint::from(IrreducibleString::count(d, k));
                let stats = pf_pairs(d as u32, n, k as u64);
                checked += 2;
                if BigUint::from(words) != pf_count(d as u32, n, k as u64) * &labels
                    || BigUint::from(words) != &stats.words * &labels
                {
                    bad.push(format!("count d={d} len={len} k={k}"));
                }
                if BigUint::from(pairs) != &stats.total * &labels {
                    bad.push(format!("pairs d={d} len={len} k={k}"));
                }
            }
            let s = d - 1;
            for (k, t) in brute_force_dyck(s, len).iter().enumerate() {
                if (len - k) % 2 == 1 {
                    continue;
                }
                let n = (len - k) / 2;
                let colorings = BigUint::from(s as u32).pow(k as u32);
                let peaks = dyck_peaks(s as u32, n as u64, k as u64).total / &colorings;
                let valleys =
                    bivariate::valleys_k(s as u32, k as u32, n, 1).first_moment()[n].clone();
                checked += 3;
                if BigUint::from(t.words) != catalan(n as u64, k as u64, s as u32) {
                    bad.push(format!("dyck s={s} len={len} k={k}"));
                }
                if BigUint::from(t.peaks) != peaks {
                    bad.push(format!("peaks s={s} len={len} k={k}"));
                }
                if BigInt::from(t.valleys) != valleys {
                    bad.push(format!("valleys s={s} len={len} k={k}"));
                }
            }
        }
    }
    let computed = if bad.is_empty() {
        format!("{checked} totals agree")
    } else {
        format!("mismatch: {}", bad.join(", "))
    };
    Ok(outcome(
        "enumeration = formulas",
        computed,
        "exact",
        bad.is_empty(),
    ))
}

/// Uncolored paths by (length, final height): (words, peaks).
fn peak_dp(max_len: usize) -> Vec<Vec<(BigUint, BigUint)>> {
    // state: height, last step up
    let z = || (BigUint::zero(), BigUint::zero());
    let mut cur = vec![[z(), z()]; max_len + 2];
    cur[0][0] = (BigUint::from(1u32), BigUint::zero());
    let mut out = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        out.push(
            cur.iter()
                .map(|s| (&s[0].0 + &s[1].0, &s[0].1 + &s[1].1))
                .collect(),
        );
        let mut next = vec![[z(), z()]; max_len + 2];
        for h in 0..=len.min(max_len) {
            for up in 0..2 {
                let (w, p) = cur[h][up].clone();
                if w.is_zero() {
                    continue;
                }
                if h < max_len + 1 {
                    let e = &mut next[h + 1][1];
                    e.0 += &w;
                    e.1 += &p;
                }
                if h > 0 {
                    let e = &mut next[h - 1][0];
                    let closes = if up == 1 { w.clone() } else { BigUint::zero() };
                    e.0 += &w;
                    e.1 += p + closes;
                }
            }
        }
        cur = next;
    }
    out
}

fn claim_closed_forms() -> Result<Outcome> {
    let nmax = 200u64;
    let mut bad = Vec::new();
    for d in 3..=5u32 {
        let t = ratio_tables(d, nmax);
        for n in 0..=nmax {
            let rhs = BigRational::from_integer(BigInt::from(catalan(n, 0, d - 1) * (d - 1)))
                * &t.r[n as usize]
                / BigInt::from(d);
            if rhs != BigRational::from_integer(BigInt::from(pf_count(d, n, 0))) {
                bad.push(format!("W d={d} n={n}"));
                break;
            }
        }
    }
    for n in 0..=nmax {
        for k in 0..=10u64 {
            if pf_count(2, n, k) != binomial(2 * n + k, n) {
                bad.push(format!("W2 n={n} k={k}"));
            }
        }
        if pf_pairs(2, n, 0).total != binomial(2 * n, n) * n {
            bad.push(format!("phi n={n}"));
        }
    }
    for n in (0..=nmax).step_by(7) {
        for k in 0..=10u64 {
            if n + k > 0 && pf_pairs(2, n, k).average != d2_pair_average(n, k) {
                bad.push(format!("f n={n} k={k}"));
            }
        }
    }
    let dp = peak_dp(2 * nmax as usize + 10);
    for n in 1..=nmax {
        for k in 0..=10u64 {
            let (w, p) = &dp[(2 * n + k) as usize][k as usize];
            let avg = BigRational::new(BigInt::from(p.clone()), BigInt::from(w.clone()));
            if avg != paircount::peak_average(n, k) {
                bad.push(format!("p n={n} k={k}"));
            }
        }
        let v = d2_schmidt_variance(n);
        if v != BigRational::new(BigInt::from(n * n), BigInt::from(4 * n - 1)) {
            bad.push(format!("var n={n}"));
        }
    }
    let computed = if bad.is_empty() {
        "all identities hold".to_string()
    } else {
        format!("failures: {}", bad.join(", "))
    };
    Ok(outcome(
        "six identities, n <= 200",
        computed,
        "exact",
        bad.is_empty(),
    ))
}

fn claim_d2_gap() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for n in (2..=12).step_by(2) {
        let (_, g) = spectra::subspace_gap(&HamiltonianParams::new(Model::Pf { d: 2 }, n))?;
        worst = worst.max((g - (1.0 - (std::f64::consts::PI / n as f64).cos())).abs());
    }
    Ok(outcome(
        "1 - cos(pi/N), N = 2..12",
        format!("max deviation {worst:.2e}"),
        "1e-8",
        worst <= 1e-8,
    ))
}

fn claim_gap_fits() -> Result<Outcome> {
    let pf = gap_scaling_fit(
        Model::Pf { d: 3 },
        &Subspace::balanced(),
        false,
        &[6, 8, 10, 12],
    )?;
    let motzkin = gap_scaling_fit(
        Model::Motzkin,
        &Subspace::balanced(),
        false,
        &(3..=10).collect::<Vec<_>>(),
    )?;
    let fredkin = gap_scaling_fit(
        Model::Fredkin { s: 1 },
        &Subspace::balanced(),
        false,
        &(2..=8).map(|m| 2 * m).collect::<Vec<_>>(),
    )?;
    let pass = (pf.exponent + 2.38).abs() <= 0.3
        && (motzkin.exponent + 2.91).abs() <= 0.3
        && (fredkin.exponent + 3.02).abs() <= 0.3;
    Ok(outcome(
        "PF -2.38, Motzkin -2.91, Fredkin -3.02",
        format!(
            "PF {:.3}, Motzkin {:.3}, Fredkin {:.3}",
            pf.exponent, motzkin.exponent, fredkin.exponent
        ),
        "0.3",
        pass,
    ))
}

fn claim_entropy_ratio() -> Result<Outcome> {
    let c = entropy_comparison(3, 8000)?;
    Ok(outcome(
        "0.9825",
        format!("{:.5}", c.ratio),
        "0.005",
        (c.ratio - 0.9825).abs() <= 0.005,
    ))
}

fn claim_entropy_bounds() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [16, 64, 256, 1024, 4096] {
        let c = entropy_comparison(3, n)?;
        pass &= c.lower_ok && c.upper_ok;
        parts.push(format!(
            "N={n} slack {:.2}/{:.2}",
            c.lower_slack, c.upper_slack
        ));
    }
    Ok(outcome(
        "0.25 S_D <= S_PF <= 9 S_D",
        parts.join(", "),
        "inequality",
        pass,
    ))
}

fn claim_oracle_entropy() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for d in [2u8, 3] {
        for n in [4, 8, 12, 16] {
            let o = ground_state_entropy_oracle(d, n, LIMIT)?;
            let s = schmidt_spectrum(SchmidtModel::Pf { d: d as u32 }, n)?;
            let want = s.expanded(1 << 24)?;
            if want.len() != o.lambda_sq.len() {
                return Ok(outcome(
                    "equal spectra",
                    format!(
                        "rank {} vs {} at d={d} N={n}",
                        want.len(),
                        o.lambda_sq.len()
                    ),
                    "1e-10",
                    false,
                ));
            }
            worst = worst.max((o.entropy_bits - entropy(&s)?.entropy_bits).abs());
            for (a, b) in want.iter().zip(&o.lambda_sq) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    let mut e0 = 0.0f64;
    for (model, n) in [
        (Model::Pf { d: 2 }, 12),
        (Model::Pf { d: 3 }, 8),
        (Model::Motzkin, 8),
        (Model::Fredkin { s: 1 }, 10),
    ] {
        let r = spectra::sector_ground_energies(model, n, 0.0, LIMIT)?;
        e0 = r.ground.values().fold(e0, |m, v| m.max(v.abs()));
    }
    Ok(outcome(
        "spectra equal; ground energy 0",
        format!("max spectrum deviation {worst:.1e}; max |E0| {e0:.1e}"),
        "1e-10 / 1e-12",
        worst <= 1e-10 && e0 <= 1e-12,
    ))
}

fn claim_degeneracy() -> Result<Outcome> {
    let delta = 1e-3;
    let r = spectra::perturbation_analysis(3, 8, delta, LIMIT)?;
    let pass = r.unique_in_fully_reducible && r.max_residual <= 10.0 * delta * delta;
    Ok(outcome(
        "unique ground state, residual <= 10 delta^2",
        format!(
            "unique {}, gap {:.2e}, residual {:.2e}",
            r.unique_in_fully_reducible, r.global_gap, r.max_residual
        ),
        "1e-5",
        pass,
    ))
}

fn claim_supertree() -> Result<Outcome> {
    let mut pass = true;
    for d in 3..=6u32 {
        let q = q_table(d, 6)?;
        pass &= q.get(1, 3)
            == Some(&BigRational::new(
                BigInt::from(d - 1),
                BigInt::from(2 * d - 1),
            ));
        pass &= q.get(2, 3) == Some(&BigRational::from_integer(BigInt::from(1)));
    }
    let t = build_supertree(3, 6, LIMIT)?;
    let mut range = (usize::MAX, 0);
    for k in 0..6 {
        for c in t.children_counts(k) {
            range = (range.0.min(c), range.1.max(c));
        }
    }
    let root = t.children_counts(0)[0];
    let level1 = t.children_counts(1);
    pass &= range.0 >= 1 && range.1 <= 8 && root == 3 && level1.iter().all(|&c| c == 5);
    Ok(outcome(
        "q13 = (d-1)/(2d-1), q23 = 1; children 1..8; root 3, level 1 5",
        format!(
            "q13(d=3) {}, children {}..{}, root {root}, level 1 {}",
            t.q.get(1, 3)
                .map(markov::rational_string)
                .unwrap_or_default(),
            range.0,
            range.1,
            level1.first().copied().unwrap_or(0)
        ),
        "exact",
        pass,
    ))
}

fn claim_markov() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    let tree = build_supertree(3, 4, LIMIT)?;
    for n in 1..=4 {
        let pd = pd_chain(3, n, LIMIT)?;
        let st = canonical_path_bound(&tree, &pd)?;
        let gap = pd.gap()?;
        let b = rational_to_f64(&st.bound);
        pass &= b <= gap * (1.0 + 1e-12);
        let c = comparison_bound(3, n, LIMIT)?;
        pass &= c.holds;
        if n == 4 {
            notes.push(format!(
                "n=4: canonical {b:.3e} <= PD gap {gap:.3e}; comparison {:.3e} <= PF gap {:.3e}",
                rational_to_f64(&c.constant) * c.pd_gap,
                c.pf_gap
            ));
        }
    }
    let mut worst_ratio = f64::INFINITY;
    for k in 1..=2 {
        for l in (k + 1)..=8 {
            let r = dirichlet_sandwich(3, l, k)?;
            pass &= r.holds;
            worst_ratio = worst_ratio.min(r.pfh_gap / r.lower);
        }
    }
    notes.push(format!("Dirichlet min gap(PFH)/lower {worst_ratio:.2}"));
    let mut rel = 0.0f64;
    for n in 1..=5 {
        rel = rel.max(pf_gap_relation(3, n, LIMIT)?.difference);
    }
    pass &= rel <= 1e-10;
    notes.push(format!("gap relation deviation {rel:.1e}"));
    Ok(outcome(
        "bounds below exact gaps; relation to 1e-10",
        notes.join("; "),
        "inequality / 1e-10",
        pass,
    ))
}

fn claim_twisted() -> Result<Outcome> {
    let reports: Vec<_> = (3..=7)
        .map(|n| spectra::twisted_state(3, n, LIMIT))
        .collect::<Result<_>>()?;
    let sq = |r: &spectra::TwistedStateReport, x: f64| (r.n * r.n) as f64 * x;
    let k = reports
        .iter()
        .map(|r| sq(r, r.energy_bound))
        .fold(0.0, f64::max);
    let scaled: Vec<f64> = reports.iter().map(|r| sq(r, r.energy)).collect();
    let overlap = reports.iter().map(|r| r.overlap_sq).fold(0.0, f64::max);
    let pass = scaled.iter().all(|&e| e <= k) && overlap <= 0.99;
    Ok(outcome(
        "n^2 E <= K, overlap^2 <= 0.99",
        format!(
            "max n^2 E {:.1}, K {:.1}, max overlap^2 {:.3}",
            scaled.iter().cloned().fold(0.0, f64::max),
            k,
            overlap
        ),
        "n = 3..7",
        pass,
    ))
}

fn claim_asymptotics() -> Result<Outcome> {
    let phi = pf_pairs_table(3, 1000);
    let mut avg = 0.0f64;
    for n in 50..=1000u64 {
        let f = rational_to_f64(&pf_pairs_with_table(3, n, 0, &phi).average);
        avg = avg.max((f - 0.75 * n as f64 - 0.75).abs() * n as f64);
    }
    let g = rescaled_subspace_gap(3, 500, 2, &phi)?;
    let mut var = 0.0f64;
    for n in [50u64, 100, 200, 500, 1000] {
        let v = rational_to_f64(&paircount::pf_pair_variance(3, n, 0));
        var = var.max((v - 13.0 * n as f64 / 32.0 - 1.0 / 64.0).abs() * n as f64);
    }
    let pass = avg <= 10.0 && (g - 0.45).abs() <= 0.045 && var <= 10.0;
    Ok(outcome(
        "n|f - 3(n+1)/4| bounded; rescaled gap 0.45; n|var - 13n/32 - 1/64| bounded",
        format!("max n|f diff| {avg:.2}; gap {g:.4}; max n|var diff| {var:.2}"),
        "10 / 10% / 10",
        pass,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force_pf(3, 4)[0], (15, 27));
        let t = brute_force_dyck(1, 6);
        assert_eq!(
            t[0],
            DyckTotals {
                words: 5,
                peaks: 10,
                valleys: 5
            }
        );
    }

    #[test]
    fn peak_dp_small() {
        let dp = peak_dp(6);
        assert_eq!(dp[6][0], (BigUint::from(5u32), BigUint::from(10u32)));
    }

    #[test]
    fn fast_claims() {
        for id in [1, 2, 5] {
            let r = run_claim(id);
            assert!(r.pass, "{}", r.line());
        }
        assert!(!run_claim(99).pass);
    }
}
