//! Nonnegative lattice paths, ballot numbers, and the peak-deletion bijection
//! between nonnegative paths and bounded-growth height sequences.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::perm::{parse_comma_list, write_comma_list};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// `(1, 1)`
    Up,
    /// `(1, -1)`
    Down,
}

/// A sequence of up and down steps. Text form is a string over `U` and `D`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath(Vec<Step>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathClass {
    pub nonnegative: bool,
    pub dyck: bool,
    /// Returns to ground level; zero unless the path is a non-empty Dyck path.
    pub component_count: usize,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ups(&self) -> usize {
        self.0.iter().filter(|&&s| s == Step::Up).count()
    }

    pub fn downs(&self) -> usize {
        self.0.len() - self.ups()
    }

    pub fn classify(&self) -> PathClass {
        let mut height: i64 = 0;
        let mut nonnegative = true;
        let mut returns = 0;
        for &s in &self.0 {
            height += if s == Step::Up { 1 } else { -1 };
            if height < 0 {
                nonnegative = false;
            }
            if height == 0 {
                returns += 1;
            }
        }
        let dyck = nonnegative && height == 0;
        PathClass {
            nonnegative,
            dyck,
            component_count: if dyck { returns } else { 0 },
        }
    }

    /// Every path with `len` steps, in lexicographic order (`U` before `D`).
    pub fn all_of_length(len: usize) -> impl Iterator<Item = LatticePath> {
        (0u64..1 << len).map(move |bits| {
            LatticePath(
                (0..len)
                    .map(|i| if bits >> (len - 1 - i) & 1 == 0 { Step::Up } else { Step::Down })
                    .collect(),
            )
        })
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'U' => Ok(Step::Up),
                'D' => Ok(Step::Down),
                other => Err(Error::InvalidInput(format!("unexpected character {other:?} in path"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePath)
    }
}

/// An element of `C_{k,r}`: `1 <= a_1 <= r+1` and `1 <= a_i <= a_{i-1}+1`.
/// The length `k` is implied by the heights; `r >= -1` is carried explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeightSequence {
    heights: Vec<u32>,
    bound: i64,
}

impl HeightSequence {
    pub fn new(heights: Vec<u32>, bound: i64) -> Result<Self> {
        check_growth(&heights, bound)?;
        Ok(HeightSequence { heights, bound })
    }

    pub(crate) fn new_unchecked(heights: Vec<u32>, bound: i64) -> Self {
        debug_assert!(check_growth(&heights, bound).is_ok(), "{heights:?} / {bound}");
        HeightSequence { heights, bound }
    }

    pub fn empty(bound: i64) -> Self {
        HeightSequence { heights: Vec::new(), bound }
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    /// `k`.
    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    /// `r`.
    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn to_path(&self) -> Result<LatticePath> {
        if self.bound < 0 {
            return invalid("no path has a negative number of surplus up steps");
        }
        heights_to_path(&self.heights, self.bound as usize)
    }
}

impl fmt::Display for HeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.heights)
    }
}

fn check_growth(heights: &[u32], bound: i64) -> Result<()> {
    if bound < -1 {
        return invalid(format!("bound r = {bound} is below -1"));
    }
    let mut ceiling = bound + 1;
    for (i, &a) in heights.iter().enumerate() {
        let a = i64::from(a);
        if a < 1 || a > ceiling {
            return invalid(format!(
                "height {a} at index {} violates 1 <= a <= {ceiling}",
                i + 1
            ));
        }
        ceiling = a + 1;
    }
    Ok(())
}

/// Parses a comma-separated list of heights; the empty string is the empty list.
pub fn parse_heights(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() || s == "()" {
        return Ok(Vec::new());
    }
    parse_comma_list(s)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Ballot number: nonnegative paths with `n` down steps and `n + m` up steps.
/// `m = -1` follows the convention `1` for `n = 0` and `0` otherwise.
pub fn ballot(n: u64, m: i64) -> BigUint {
    assert!(m >= -1, "ballot number undefined for m = {m}");
    if m == -1 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let m = m as u64;
    let total = 2 * n + m + 1;
    let numerator = binomial(total, n) * (m + 1);
    let denominator = BigUint::from(total);
    let quotient = &numerator / &denominator;
    assert!(
        (&quotient * &denominator) == numerator,
        "ballot({n}, {m}) division was not exact"
    );
    quotient
}

pub fn catalan(n: u64) -> BigUint {
    ballot(n, 0)
}

/// Deletes the first peak `UD` until none remain, prepending the apex height of
/// each deleted peak. The result lies in `C_{n,m}` for a path of `n` down steps
/// and `n + m` up steps.
pub fn path_to_heights(path: &LatticePath) -> Result<HeightSequence> {
    if !path.classify().nonnegative {
        return invalid(format!("path {path} dips below ground level"));
    }
    let mut steps = path.0.clone();
    let mut recorded = Vec::new();
    while let Some(i) = steps.windows(2).position(|w| w == [Step::Up, Step::Down]) {
        // the peak's apex is reached by an unbroken ascent, so its height is i + 1
        recorded.push(i as u32 + 1);
        steps.drain(i..i + 2);
    }
    recorded.reverse();
    let surplus = (path.ups() - path.downs()) as i64;
    Ok(HeightSequence::new_unchecked(recorded, surplus))
}

/// Starts from `m` up steps and, for each height in turn, inserts a peak into
/// the initial ascent so that its apex sits at that height.
pub fn heights_to_path(heights: &[u32], m: usize) -> Result<LatticePath> {
    check_growth(heights, m as i64)?;
    let mut steps = vec![Step::Up; m];
    for &a in heights {
        let at = a as usize - 1;
        steps.splice(at..at, [Step::Up, Step::Down]);
    }
    Ok(LatticePath(steps))
}

/// All of `C_{k,r}` in lexicographic order.
pub fn enumerate_height_sequences(k: usize, r: i64) -> Vec<HeightSequence> {
    let mut out = Vec::new();
    if r < -1 {
        return out;
    }
    let mut current = Vec::with_capacity(k);
    fn fill(k: usize, r: i64, ceiling: i64, current: &mut Vec<u32>, out: &mut Vec<HeightSequence>) {
        if current.len() == k {
            out.push(HeightSequence::new_unchecked(current.clone(), r));
            return;
        }
        for a in 1..=ceiling {
            current.push(a as u32);
            fill(k, r, a + 1, current, out);
            current.pop();
        }
    }
    fill(k, r, r + 1, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    /// Counts nonnegative paths by dynamic programming over heights.
    fn count_nonnegative(downs: usize, ups: usize) -> u64 {
        let len = downs + ups;
        let mut ways = vec![0u64; len + 2];
        ways[0] = 1;
        for _ in 0..len {
            let mut next = vec![0u64; len + 2];
            for h in 0..=len {
                if ways[h] == 0 {
                    continue;
                }
                next[h + 1] += ways[h];
                if h > 0 {
                    next[h - 1] += ways[h];
                }
            }
            ways = next;
        }
        ways[ups - downs]
    }

    #[test]
    fn ballot_examples() {
        assert_eq!(ballot(0, -1), BigUint::one());
        assert_eq!(ballot(2, -1), BigUint::zero());
        assert_eq!(ballot(3, 0), BigUint::from(5u32));
        assert_eq!(ballot(4, 2), BigUint::from(90u32));
    }

    #[test]
    fn ballot_matches_path_counts() {
        for n in 0..=6usize {
            for m in 0..=6usize {
                assert_eq!(ballot(n as u64, m as i64), BigUint::from(count_nonnegative(n, n + m)), "({n},{m})");
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = path("UDUD").classify();
        assert_eq!((c.nonnegative, c.dyck, c.component_count), (true, true, 2));
        let c = path("UUDD").classify();
        assert_eq!((c.nonnegative, c.dyck, c.component_count), (true, true, 1));
        let c = path("DU").classify();
        assert_eq!((c.nonnegative, c.dyck, c.component_count), (false, false, 0));
        let c = path("").classify();
        assert_eq!((c.nonnegative, c.dyck, c.component_count), (true, true, 0));
        let c = path("UUD").classify();
        assert_eq!((c.nonnegative, c.dyck, c.component_count), (true, false, 0));
    }

    #[test]
    fn peak_deletion_examples() {
        let h = path_to_heights(&path("UUDUUUDUDD")).unwrap();
        assert_eq!(h.heights(), &[3, 4, 4, 2]);
        assert_eq!(h.bound(), 2);
        assert!(path_to_heights(&path("UU")).unwrap().is_empty());
        assert_eq!(path_to_heights(&path("UDUD")).unwrap().heights(), &[1, 1]);
        assert!(path_to_heights(&path("DU")).is_err());
    }

    #[test]
    fn peak_insertion_examples() {
        assert_eq!(heights_to_path(&[3, 4, 4, 2], 2).unwrap(), path("UUDUUUDUDD"));
        assert_eq!(heights_to_path(&[], 3).unwrap(), path("UUU"));
        assert_eq!(heights_to_path(&[1, 1], 0).unwrap(), path("UDUD"));
        assert!(heights_to_path(&[1, 3], 0).is_err());
        assert!(heights_to_path(&[2], 0).is_err());
        assert!(heights_to_path(&[0], 4).is_err());
    }

    #[test]
    fn height_sequence_enumeration() {
        let seqs = |k, r| -> Vec<Vec<u32>> {
            enumerate_height_sequences(k, r).into_iter().map(|s| s.heights().to_vec()).collect()
        };
        assert_eq!(seqs(1, 1), vec![vec![1], vec![2]]);
        assert_eq!(seqs(2, 0), vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(enumerate_height_sequences(4, 2).len(), 90);
        assert_eq!(seqs(0, 3), vec![Vec::<u32>::new()]);
        assert_eq!(seqs(0, -1), vec![Vec::<u32>::new()]);
        assert!(seqs(2, -1).is_empty());
    }

    #[test]
    fn height_sequence_validation() {
        assert!(HeightSequence::new(vec![2, 3, 1, 2], 1).is_ok());
        assert!(HeightSequence::new(vec![3], 1).is_err());
        assert!(HeightSequence::new(vec![1], -1).is_err());
        assert!(HeightSequence::new(vec![], -1).is_ok());
        assert!(HeightSequence::new(vec![], -2).is_err());
    }

    #[test]
    fn path_bijection_exhaustive() {
        for len in 0..=12 {
            for p in LatticePath::all_of_length(len) {
                if !p.classify().nonnegative {
                    continue;
                }
                let h = path_to_heights(&p).unwrap();
                assert_eq!(h.len(), p.downs());
                assert_eq!(h.to_path().unwrap(), p);
            }
        }
    }

    #[test]
    fn indecomposable_dyck_paths_are_shifted_catalan() {
        for size in 1..=8u64 {
            let count = LatticePath::all_of_length(2 * size as usize)
                .filter(|p| p.classify().component_count == 1)
                .count();
            assert_eq!(BigUint::from(count), ballot(size - 1, 0));
        }
    }

    #[test]
    fn path_text_round_trip() {
        assert_eq!(path("UUDUUUDUDD").to_string(), "UUDUUUDUDD");
        assert!("UUx".parse::<LatticePath>().is_err());
        assert!("U D".parse::<LatticePath>().is_err());
    }

    #[test]
    fn parse_heights_forms() {
        assert_eq!(parse_heights("3,4,4,2").unwrap(), vec![3, 4, 4, 2]);
        assert_eq!(parse_heights("").unwrap(), Vec::<u32>::new());
        assert!(parse_heights("3,,2").is_err());
    }
}
