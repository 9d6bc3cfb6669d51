//! Words over `{1..d}`, the left-to-right pair reduction, pair flips,
//! invariant-subspace enumeration and the single-block PF/Dyck bijection.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{check_size, Error, Result};

pub const MAX_D: u8 = 15;

fn check_d(d: u8) -> Result<()> {
    if (2..=MAX_D).contains(&d) {
        Ok(())
    } else {
        Err(Error::BadAlphabet(d as u32))
    }
}

fn letter_char(c: u8) -> char {
    if c <= 9 {
        (b'0' + c) as char
    } else {
        (b'a' + c - 10) as char
    }
}

fn parse_letters(d: u8, s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|ch| {
            let v = match ch {
                '1'..='9' => ch as u8 - b'0',
                'a'..='f' => ch as u8 - b'a' + 10,
                _ => return Err(Error::Parse(format!("bad letter {ch:?}"))),
            };
            if v > d {
                Err(Error::InvalidLetter { letter: v, d })
            } else {
                Ok(v)
            }
        })
        .collect()
}

/// A chain configuration: one letter in `1..=d` per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    d: u8,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(d: u8, letters: Vec<u8>) -> Result<Self> {
        check_d(d)?;
        if let Some(&bad) = letters.iter().find(|&&c| c == 0 || c > d) {
            return Err(Error::InvalidLetter { letter: bad, d });
        }
        Ok(Word { d, letters })
    }

    pub(crate) fn from_raw(d: u8, letters: Vec<u8>) -> Self {
        Word { d, letters }
    }

    /// Parses a digit string; letters above 9 use `a`..`f`.
    pub fn parse(d: u8, s: &str) -> Result<Self> {
        check_d(d)?;
        Word::new(d, parse_letters(d, s.trim())?)
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters
            .iter()
            .try_for_each(|&c| write!(f, "{}", letter_char(c)))
    }
}

/// A word with no two equal neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreducibleString {
    d: u8,
    letters: Vec<u8>,
}

impl IrreducibleString {
    pub fn new(d: u8, letters: Vec<u8>) -> Result<Self> {
        let w = Word::new(d, letters)?;
        if w.letters.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::BadLabel(format!("{w} has adjacent equal letters")));
        }
        Ok(IrreducibleString {
            d,
            letters: w.letters,
        })
    }

    pub fn parse(d: u8, s: &str) -> Result<Self> {
        check_d(d)?;
        IrreducibleString::new(d, parse_letters(d, s.trim())?)
    }

    pub fn empty(d: u8) -> Self {
        IrreducibleString {
            d,
            letters: Vec::new(),
        }
    }

    /// `1212...` of length `k`.
    pub fn canonical(d: u8, k: usize) -> Self {
        IrreducibleString {
            d,
            letters: (0..k).map(|i| 1 + (i % 2) as u8).collect(),
        }
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of irreducible strings of length `k` over `d` letters.
    pub fn count(d: u8, k: usize) -> u128 {
        if k == 0 {
            1
        } else {
            d as u128 * (d as u128 - 1).pow(k as u32 - 1)
        }
    }

    /// All irreducible strings of length `k`, lexicographic.
    pub fn all(d: u8, k: usize) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::new();
            for s in &out {
                for c in (1..=d).filter(|&c| s.last() != Some(&c)) {
                    let mut t = s.clone();
                    t.push(c);
                    next.push(t);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|letters| IrreducibleString { d, letters })
            .collect()
    }
}

impl fmt::Display for IrreducibleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters
            .iter()
            .try_for_each(|&c| write!(f, "{}", letter_char(c)))
    }
}

/// Invariant subspace: words of length `n_sites` reducing to `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubspaceLabel {
    pub n_sites: usize,
    pub s: IrreducibleString,
}

impl SubspaceLabel {
    pub fn new(n_sites: usize, s: IrreducibleString) -> Result<Self> {
        if s.len() > n_sites || (n_sites - s.len()) % 2 != 0 {
            return Err(Error::BadLabel(format!(
                "|s| = {} incompatible with N = {n_sites}",
                s.len()
            )));
        }
        Ok(SubspaceLabel { n_sites, s })
    }

    pub fn fully_reducible(d: u8, n_sites: usize) -> Result<Self> {
        check_d(d)?;
        SubspaceLabel::new(n_sites, IrreducibleString::empty(d))
    }

    pub fn d(&self) -> u8 {
        self.s.d
    }

    /// Number of reducible pairs, `(N - |s|)/2`.
    pub fn pairs(&self) -> usize {
        (self.n_sites - self.s.len()) / 2
    }

    /// `s` padded on the left with copies of `11`.
    pub fn seed(&self) -> Word {
        let mut letters = vec![1u8; 2 * self.pairs()];
        letters.extend_from_slice(&self.s.letters);
        Word::from_raw(self.d(), letters)
    }
}

/// Heights of the stack during reduction, and twice the area under them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MountainProfile {
    pub heights: Vec<u32>,
    pub twice_area: u64,
}

impl MountainProfile {
    pub fn area(&self) -> f64 {
        self.twice_area as f64 / 2.0
    }
}

fn reduce_letters(letters: &[u8]) -> Vec<u8> {
    let mut stack = Vec::with_capacity(letters.len());
    for &c in letters {
        if stack.last() == Some(&c) {
            stack.pop();
        } else {
            stack.push(c);
        }
    }
    stack
}

pub fn reduce(w: &Word) -> IrreducibleString {
    IrreducibleString {
        d: w.d,
        letters: reduce_letters(&w.letters),
    }
}

/// Recolors the pair at 1-based positions `i, i+1` to `t`.
pub fn apply_flip(w: &Word, i: usize, t: u8) -> Result<Word> {
    if i == 0 || i >= w.len() || w.letters[i - 1] != w.letters[i] {
        return Err(Error::PositionNotAPair(i, i + 1));
    }
    if t == 0 || t > w.d {
        return Err(Error::InvalidLetter { letter: t, d: w.d });
    }
    if t == w.letters[i - 1] {
        return Err(Error::SameColor(t));
    }
    let mut letters = w.letters.clone();
    letters[i - 1] = t;
    letters[i] = t;
    Ok(Word::from_raw(w.d, letters))
}

pub(crate) fn for_each_flip(d: u8, letters: &[u8], mut f: impl FnMut(usize, u8)) {
    for i in 0..letters.len().saturating_sub(1) {
        let c = letters[i];
        if c == letters[i + 1] {
            for t in 1..=d {
                if t != c {
                    f(i, t);
                }
            }
        }
    }
}

/// All words one flip away, sorted.
pub fn neighbors(w: &Word) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_flip(w.d, &w.letters, |i, t| {
        let mut l = w.letters.clone();
        l[i] = t;
        l[i + 1] = t;
        out.push(Word::from_raw(w.d, l));
    });
    out.sort();
    out.dedup();
    out
}

/// Default cap on enumerated basis sizes.
pub const DEFAULT_ENUM_LIMIT: u128 = 5_000_000;

/// Generic breadth-first closure of `seed` under `moves`, sorted on return.
pub(crate) fn bfs_closure(
    seed: Vec<u8>,
    limit: u128,
    mut moves: impl FnMut(&[u8], &mut Vec<Vec<u8>>),
) -> Result<Vec<Vec<u8>>> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seed.clone());
    queue.push_back(seed);
    let mut buf = Vec::new();
    while let Some(w) = queue.pop_front() {
        buf.clear();
        moves(&w, &mut buf);
        for v in buf.drain(..) {
            if !seen.contains(&v) {
                check_size("subspace dimension", seen.len() as u128 + 1, limit)?;
                seen.insert(v.clone());
                queue.push_back(v);
            }
        }
    }
    let mut out: Vec<Vec<u8>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Sorted basis of the subspace, by BFS over flips from the canonical seed.
pub fn enumerate_subspace(label: &SubspaceLabel, limit: u128) -> Result<Vec<Word>> {
    let d = label.d();
    let expected = crate::counting::pf_count(d as u32, label.pairs() as u64, label.s.len() as u64);
    if expected > num_bigint::BigUint::from(limit) {
        return Err(Error::SizeLimitExceeded {
            what: "subspace dimension".into(),
            size: u128::try_from(expected).unwrap_or(u128::MAX),
            limit,
        });
    }
    let raw = bfs_closure(label.seed().letters, limit, |w, out| {
        for_each_flip(d, w, |i, t| {
            let mut l = w.to_vec();
            l[i] = t;
            l[i + 1] = t;
            out.push(l);
        })
    })?;
    Ok(raw.into_iter().map(|l| Word::from_raw(d, l)).collect())
}

/// Brute-force filter over all `d^N` words; the independent check for
/// [`enumerate_subspace`].
pub fn enumerate_by_filter(label: &SubspaceLabel, limit: u128) -> Result<Vec<Word>> {
    let d = label.d();
    let total = (d as u128)
        .checked_pow(label.n_sites as u32)
        .unwrap_or(u128::MAX);
    check_size("d^N", total, limit)?;
    let mut out = Vec::new();
    let mut cur = vec![1u8; label.n_sites];
    loop {
        if reduce_letters(&cur) == label.s.letters {
            out.push(Word::from_raw(d, cur.clone()));
        }
        if !odometer(&mut cur, d) {
            break;
        }
    }
    Ok(out)
}

/// Advances `cur` to the next word in lexicographic order; false when done.
pub(crate) fn odometer(cur: &mut [u8], d: u8) -> bool {
    for pos in (0..cur.len()).rev() {
        if cur[pos] < d {
            cur[pos] += 1;
            return true;
        }
        cur[pos] = 1;
    }
    false
}

pub fn profile(w: &Word) -> MountainProfile {
    let mut stack: Vec<u8> = Vec::with_capacity(w.len());
    let mut heights = Vec::with_capacity(w.len() + 1);
    heights.push(0u32);
    let mut twice_area = 0u64;
    for &c in &w.letters {
        let before = stack.len() as u64;
        if stack.last() == Some(&c) {
            stack.pop();
        } else {
            stack.push(c);
        }
        twice_area += before + stack.len() as u64;
        heights.push(stack.len() as u32);
    }
    MountainProfile {
        heights,
        twice_area,
    }
}

pub fn count_pairs(w: &Word) -> usize {
    w.letters.windows(2).filter(|p| p[0] == p[1]).count()
}

/// A step of a colored Dyck word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracket {
    Open(u8),
    Close(u8),
}

/// A colored Dyck word; colors are `1..=colors`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckWord {
    pub colors: u8,
    pub steps: Vec<Bracket>,
}

impl DyckWord {
    pub fn new(colors: u8, steps: Vec<Bracket>) -> Result<Self> {
        let w = DyckWord { colors, steps };
        if w.is_balanced() {
            Ok(w)
        } else {
            Err(Error::NotDyck)
        }
    }

    fn is_balanced(&self) -> bool {
        let mut stack = Vec::new();
        for &b in &self.steps {
            match b {
                Bracket::Open(c) if (1..=self.colors).contains(&c) => stack.push(c),
                Bracket::Close(c) if stack.last() == Some(&c) => {
                    stack.pop();
                }
                _ => return false,
            }
        }
        stack.is_empty()
    }

    /// Every colored Dyck word with `pairs` bracket pairs, sorted.
    pub fn all(colors: u8, pairs: usize) -> Vec<DyckWord> {
        fn rec(
            colors: u8,
            open: usize,
            stack: &mut Vec<u8>,
            cur: &mut Vec<Bracket>,
            out: &mut Vec<DyckWord>,
        ) {
            if open == 0 && stack.is_empty() {
                out.push(DyckWord {
                    colors,
                    steps: cur.clone(),
                });
                return;
            }
            if open > 0 {
                for c in 1..=colors {
                    stack.push(c);
                    cur.push(Bracket::Open(c));
                    rec(colors, open - 1, stack, cur, out);
                    cur.pop();
                    stack.pop();
                }
            }
            if let Some(c) = stack.pop() {
                cur.push(Bracket::Close(c));
                rec(colors, open, stack, cur, out);
                cur.pop();
                stack.push(c);
            }
        }
        let mut out = Vec::new();
        rec(colors, pairs, &mut Vec::new(), &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.steps {
            match b {
                Bracket::Open(c) => write!(f, "L{c}")?,
                Bracket::Close(c) => write!(f, "R{c}")?,
            }
        }
        Ok(())
    }
}

/// `i`-th (1-based) element of `{1..d} \ {base}`.
fn skip_base(base: u8, i: u8) -> u8 {
    if i < base {
        i
    } else {
        i + 1
    }
}

/// Inverse of [`skip_base`].
fn rank_without(base: u8, a: u8) -> u8 {
    if a < base {
        a
    } else {
        a - 1
    }
}

/// Splits a fully reducible letter slice into top-level blocks `A beta A`.
fn top_blocks(letters: &[u8]) -> Option<Vec<(u8, &[u8])>> {
    let mut out = Vec::new();
    let mut stack: Vec<u8> = Vec::new();
    let mut start = 0;
    for (j, &c) in letters.iter().enumerate() {
        if stack.last() == Some(&c) {
            stack.pop();
        } else {
            stack.push(c);
        }
        if stack.is_empty() {
            out.push((letters[start], &letters[start + 1..j]));
            start = j + 1;
        }
    }
    stack.is_empty().then_some(out)
}

/// Maps the interior of a single-block word `X block X` to a `(d-1)`-colored
/// Dyck word.
pub fn pf_to_dyck(block: &Word, base: u8) -> Result<DyckWord> {
    let d = block.d;
    if base == 0 || base > d {
        return Err(Error::InvalidLetter { letter: base, d });
    }
    fn rec(letters: &[u8], base: u8, out: &mut Vec<Bracket>) -> Result<()> {
        let blocks = top_blocks(letters).ok_or(Error::NotSingleBlockInterior(base))?;
        for (a, inner) in blocks {
            if a == base {
                return Err(Error::NotSingleBlockInterior(base));
            }
            let c = rank_without(base, a);
            out.push(Bracket::Open(c));
            rec(inner, a, out)?;
            out.push(Bracket::Close(c));
        }
        Ok(())
    }
    let mut steps = Vec::with_capacity(block.len());
    rec(&block.letters, base, &mut steps)?;
    Ok(DyckWord {
        colors: d - 1,
        steps,
    })
}

/// Maps a `(d-1)`-colored Dyck word to the interior of a single-block word
/// with base `base`.
pub fn dyck_to_pf(dyck: &DyckWord, base: u8, d: u8) -> Result<Word> {
    check_d(d)?;
    if dyck.colors != d - 1 || !dyck.is_balanced() {
        return Err(Error::NotDyck);
    }
    if base == 0 || base > d {
        return Err(Error::InvalidLetter { letter: base, d });
    }
    let mut letters = Vec::with_capacity(dyck.steps.len());
    // stack of base letters for the open brackets
    let mut bases = vec![base];
    for &b in &dyck.steps {
        match b {
            Bracket::Open(c) => {
                let a = skip_base(*bases.last().unwrap(), c);
                letters.push(a);
                bases.push(a);
            }
            Bracket::Close(_) => {
                letters.push(bases.pop().unwrap());
            }
        }
    }
    Ok(Word::from_raw(d, letters))
}

/// Reads the word file format: header `d=<int> N=<int>`, then one word per line.
pub fn read_word_file(text: &str) -> Result<Vec<Word>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header".into()))?;
    let mut d = None;
    let mut n = None;
    for tok in header.split_whitespace() {
        if let Some(v) = tok.strip_prefix("d=") {
            d = v.parse::<u8>().ok();
        } else if let Some(v) = tok.strip_prefix("N=") {
            n = v.parse::<usize>().ok();
        }
    }
    let (d, n) = match (d, n) {
        (Some(d), Some(n)) => (d, n),
        _ => return Err(Error::Parse(format!("bad header {header:?}"))),
    };
    lines
        .map(|l| {
            let w = Word::parse(d, l)?;
            if w.len() != n {
                return Err(Error::Parse(format!(
                    "word {w} has length {} not {n}",
                    w.len()
                )));
            }
            Ok(w)
        })
        .collect()
}

pub fn write_word_file(d: u8, n_sites: usize, words: &[Word]) -> String {
    let mut s = format!("d={d} N={n_sites}\n");
    for w in words {
        s.push_str(&w.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: u8, s: &str) -> Word {
        Word::parse(d, s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&w(3, "")).to_string(), "");
        assert_eq!(reduce(&w(2, "1212")).to_string(), "1212");
        assert_eq!(reduce(&w(2, "1122")).to_string(), "");
        // the Fig. 4 word
        assert_eq!(reduce(&w(3, "123322212331133122")).to_string(), "21");
    }

    #[test]
    fn flips() {
        assert_eq!(apply_flip(&w(2, "1122"), 1, 2).unwrap().to_string(), "2222");
        assert_eq!(apply_flip(&w(2, "122"), 2, 1).unwrap().to_string(), "111");
        assert_eq!(apply_flip(&w(2, "111"), 1, 2).unwrap().to_string(), "221");
        assert_eq!(
            apply_flip(&w(2, "12"), 1, 2),
            Err(Error::PositionNotAPair(1, 2))
        );
        assert_eq!(apply_flip(&w(2, "11"), 1, 1), Err(Error::SameColor(1)));
    }

    #[test]
    fn neighbor_examples() {
        let n: Vec<String> = neighbors(&w(2, "2222"))
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(n, ["1122", "2112", "2211"]);
        assert!(neighbors(&w(3, "12")).is_empty());
        let n: Vec<String> = neighbors(&w(3, "11"))
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(n, ["22", "33"]);
    }

    #[test]
    fn subspace_examples() {
        let l = SubspaceLabel::fully_reducible(3, 2).unwrap();
        let v: Vec<String> = enumerate_subspace(&l, 100)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(v, ["11", "22", "33"]);
        let l = SubspaceLabel::new(4, IrreducibleString::parse(3, "12").unwrap()).unwrap();
        assert_eq!(enumerate_subspace(&l, 100).unwrap().len(), 7);
        let l = SubspaceLabel::fully_reducible(2, 4).unwrap();
        assert_eq!(enumerate_subspace(&l, 100).unwrap().len(), 6);
        let l = SubspaceLabel::fully_reducible(3, 8).unwrap();
        assert!(matches!(
            enumerate_subspace(&l, 100),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn profile_examples() {
        assert_eq!(profile(&w(2, "1122")).heights, [0, 1, 0, 1, 0]);
        assert_eq!(profile(&w(2, "1221")).heights, [0, 1, 2, 1, 0]);
        let p = profile(&w(2, ""));
        assert_eq!((p.heights, p.twice_area), (vec![0], 0));
        assert_eq!(profile(&w(2, "1221")).area(), 4.0);
    }

    #[test]
    fn pair_examples() {
        assert_eq!(count_pairs(&w(2, "1111")), 3);
        assert_eq!(count_pairs(&w(2, "1212")), 0);
        let l = SubspaceLabel::fully_reducible(3, 4).unwrap();
        let total: usize = enumerate_subspace(&l, 100)
            .unwrap()
            .iter()
            .map(count_pairs)
            .sum();
        assert_eq!(total, 27);
    }

    #[test]
    fn dyck_empty_and_roundtrip() {
        let e = DyckWord::new(2, vec![]).unwrap();
        assert!(dyck_to_pf(&e, 1, 3).unwrap().is_empty());
        for pairs in 0..=4 {
            for q in DyckWord::all(2, pairs) {
                for base in 1..=3 {
                    let pf = dyck_to_pf(&q, base, 3).unwrap();
                    assert_eq!(pf.len(), 2 * pairs);
                    assert_eq!(pf_to_dyck(&pf, base).unwrap(), q);
                }
            }
        }
        assert_eq!(
            pf_to_dyck(&w(3, "11"), 1),
            Err(Error::NotSingleBlockInterior(1))
        );
        assert_eq!(
            pf_to_dyck(&w(3, "12"), 3),
            Err(Error::NotSingleBlockInterior(3))
        );
    }

    #[test]
    fn word_file_roundtrip() {
        let words = vec![w(3, "1122"), w(3, "1221")];
        let text = write_word_file(3, 4, &words);
        assert_eq!(read_word_file(&text).unwrap(), words);
        assert!(read_word_file("d=3\n11").is_err());
    }
}
