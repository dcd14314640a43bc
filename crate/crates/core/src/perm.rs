//! Permutations in one-line form, classical pattern containment, components,
//! and the single-entry deletion/insertion primitives.
//!
//! Positions and values are 1-indexed at every public entry point. Internally
//! entries live in a `Vec<u32>` indexed from zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A standard permutation of `1..=n` in one-line form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Validates that `entries` is a rearrangement of `1..=n`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            let v = v as usize;
            if v == 0 || v > n {
                return invalid(format!("value {v} is outside 1..={n}"));
            }
            if seen[v] {
                return invalid(format!("value {v} appears twice"));
            }
            seen[v] = true;
        }
        Ok(Permutation(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation(entries)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    /// The identity permutation `1 2 … n`.
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    /// Entry at 1-indexed `position`.
    pub fn at(&self, position: usize) -> Option<u32> {
        position.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// 1-indexed position of `value`.
    pub fn position_of(&self, value: u32) -> Option<usize> {
        self.0.iter().position(|&v| v == value).map(|i| i + 1)
    }

    /// `p \ {y}`: erase `y`, then decrement every entry larger than `y`.
    pub fn delete_entry(&self, y: u32) -> Result<Permutation> {
        let n = self.len();
        if n == 0 || y == 0 || y as usize > n {
            return invalid(format!("cannot delete value {y} from a permutation of length {n}"));
        }
        Ok(Permutation(delete_value(&self.0, y)))
    }

    /// `p ⊕_i y`: increment every entry `>= y`, then place `y` at 1-indexed position `i`.
    pub fn insert_entry(&self, position: usize, y: u32) -> Result<Permutation> {
        let n = self.len();
        if y == 0 || y as usize > n + 1 {
            return invalid(format!("cannot insert value {y} into a permutation of length {n}"));
        }
        if position == 0 || position > n + 1 {
            return invalid(format!("insertion position {position} is outside 1..={}", n + 1));
        }
        Ok(Permutation(insert_value(&self.0, position - 1, y)))
    }

    /// Entries strictly greater than everything to their left, in left-to-right order.
    pub fn left_to_right_maxima(&self) -> Vec<u32> {
        let mut max = 0;
        let mut out = Vec::new();
        for &v in &self.0 {
            if v > max {
                max = v;
                out.push(v);
            }
        }
        out
    }

    /// Splits at every prefix that is itself a permutation of `1..=j`; each
    /// block is standardized. The empty permutation has no components.
    pub fn components(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut max = 0;
        for (i, &v) in self.0.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 {
                let offset = start as u32;
                out.push(Permutation(self.0[start..=i].iter().map(|&x| x - offset).collect()));
                start = i + 1;
            }
        }
        out
    }

    pub fn is_indecomposable(&self) -> bool {
        is_indecomposable(&self.0)
    }

    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        find_occurrence(&self.0, &pattern.0, false).is_some()
    }

    /// Lexicographically least occurrence of `pattern`, as 1-indexed positions.
    pub fn find_pattern(&self, pattern: &Permutation) -> Option<Vec<usize>> {
        find_occurrence(&self.0, &pattern.0, false).map(|pos| pos.into_iter().map(|i| i + 1).collect())
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.0)
    }
}

/// Accepts `2,7,3,5,1,6,4` or the compact digit form `2735164`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let entries = if s.contains(',') {
            parse_comma_list(s)?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidInput(format!("unexpected character {c:?} in permutation")))
                })
                .collect::<Result<Vec<u32>>>()?
        };
        Permutation::new(entries)
    }
}

/// Relabels distinct positive values by rank.
pub fn standardize(values: &[u32]) -> Result<Permutation> {
    if values.contains(&0) {
        return invalid("values must be positive");
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return invalid("values must be pairwise distinct");
    }
    Ok(Permutation(standardize_distinct(values, &sorted)))
}

fn standardize_distinct(values: &[u32], sorted: &[u32]) -> Vec<u32> {
    values
        .iter()
        .map(|v| sorted.binary_search(v).expect("value present") as u32 + 1)
        .collect()
}

/// A finite set of classical patterns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSet(Vec<Permutation>);

impl PatternSet {
    pub fn new(patterns: Vec<Permutation>) -> Result<Self> {
        if patterns.iter().any(Permutation::is_empty) {
            return invalid("patterns must be non-empty");
        }
        Ok(PatternSet(patterns))
    }

    /// `{4321, 3241}`.
    pub fn avoider_class() -> Self {
        PatternSet(vec![
            Permutation(vec![4, 3, 2, 1]),
            Permutation(vec![3, 2, 4, 1]),
        ])
    }

    /// `{321}`.
    pub fn three_two_one() -> Self {
        PatternSet(vec![Permutation(vec![3, 2, 1])])
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.0
    }

    pub fn is_avoided_by(&self, p: &Permutation) -> bool {
        self.0.iter().all(|pat| !p.contains_pattern(pat))
    }

    /// First pattern (in set order) that `p` contains, with its least occurrence.
    pub fn first_occurrence(&self, p: &Permutation) -> Option<(&Permutation, Vec<usize>)> {
        self.0
            .iter()
            .find_map(|pat| p.find_pattern(pat).map(|occ| (pat, occ)))
    }

    /// True when some pattern occurs in `values` using the last entry.
    /// `values` need only be distinct, not standard.
    pub(crate) fn occurs_at_end(&self, values: &[u32]) -> bool {
        self.0.iter().any(|pat| find_occurrence(values, &pat.0, true).is_some())
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if p.0.iter().all(|&v| v <= 9) {
                for v in &p.0 {
                    write!(f, "{v}")?;
                }
            } else {
                write!(f, "[{p}]")?;
            }
        }
        Ok(())
    }
}

/// Comma-separated compact patterns, e.g. `4321,3241`. A pattern with entries
/// above 9 may be written in brackets: `[10,9,8,7,6,5,4,3,2,1]`.
impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PatternSet::default());
        }
        let mut patterns = Vec::new();
        let mut rest = s;
        loop {
            rest = rest.trim_start();
            let (token, tail) = if let Some(inner) = rest.strip_prefix('[') {
                let close = inner
                    .find(']')
                    .ok_or_else(|| Error::InvalidInput("unterminated '[' in pattern list".into()))?;
                (&inner[..close], &inner[close + 1..])
            } else {
                match rest.find(',') {
                    Some(i) => (&rest[..i], &rest[i..]),
                    None => (rest, ""),
                }
            };
            let pat: Permutation = token.parse()?;
            patterns.push(pat);
            let tail = tail.trim_start();
            if tail.is_empty() {
                break;
            }
            rest = tail
                .strip_prefix(',')
                .ok_or_else(|| Error::InvalidInput(format!("expected ',' before {tail:?}")))?;
        }
        PatternSet::new(patterns)
    }
}

pub(crate) fn parse_comma_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("cannot parse {tok:?} as a positive integer")))
        })
        .collect()
}

pub(crate) fn write_comma_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, v) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

pub(crate) fn is_indecomposable(p: &[u32]) -> bool {
    let mut max = 0;
    for (i, &v) in p.iter().enumerate() {
        max = max.max(v);
        if max as usize == i + 1 {
            return i + 1 == p.len();
        }
    }
    false
}

pub(crate) fn delete_value(p: &[u32], y: u32) -> Vec<u32> {
    p.iter()
        .filter(|&&v| v != y)
        .map(|&v| if v > y { v - 1 } else { v })
        .collect()
}

/// `index` is 0-based.
pub(crate) fn insert_value(p: &[u32], index: usize, y: u32) -> Vec<u32> {
    let mut out: Vec<u32> = p.iter().map(|&v| if v >= y { v + 1 } else { v }).collect();
    out.insert(index, y);
    out
}

/// Depth-first search for an occurrence of `pat` in the distinct values of
/// `text`, trying positions in increasing order so the first hit is the
/// lexicographically least. With `anchored`, the last pattern entry must sit on
/// the last text entry. Positions returned are 0-based.
pub(crate) fn find_occurrence(text: &[u32], pat: &[u32], anchored: bool) -> Option<Vec<usize>> {
    if pat.is_empty() {
        return Some(Vec::new());
    }
    if pat.len() > text.len() {
        return None;
    }
    let mut chosen = Vec::with_capacity(pat.len());
    if extend(text, pat, anchored, &mut chosen, 0) {
        Some(chosen)
    } else {
        None
    }
}

fn extend(text: &[u32], pat: &[u32], anchored: bool, chosen: &mut Vec<usize>, start: usize) -> bool {
    let depth = chosen.len();
    if depth == pat.len() {
        return true;
    }
    let remaining = pat.len() - depth;
    if text.len() < start + remaining {
        return false;
    }
    let hi = text.len() - remaining;
    let lo = if anchored && remaining == 1 { hi } else { start };
    for pos in lo..=hi {
        let v = text[pos];
        let fits = chosen
            .iter()
            .enumerate()
            .all(|(e, &q)| (v < text[q]) == (pat[depth] < pat[e]));
        if fits {
            chosen.push(pos);
            if extend(text, pat, anchored, chosen, pos + 1) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
