//! The bijection between indecomposable {4321, 3241}-avoiders and pairs
//! (indecomposable 321-avoider, height sequence).
//!
//! Throughout, "avoider" means an indecomposable permutation avoiding both
//! 4321 and 3241. An entry is *blue* if it plays the "2" in some 321 or 4312
//! occurrence. The *peak blue* entry of a 321-containing avoider is the larger
//! of the last "1" of a 321 and the entry immediately before it.
//!
//! The forward map repeatedly deletes the peak blue entry `y` and records the
//! position of `y` in the peak-insertion list of what remains; recorded heights
//! are prepended, so the inverse consumes them left to right, each time
//! inserting the listed value at its unique admissible position.
//!
//! Public functions validate their input once; the slice-level helpers behind
//! them assume a valid avoider.

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{domain, invalid, Error, Result};
use crate::paths::HeightSequence;
use crate::perm::{delete_value, insert_value, is_indecomposable, PatternSet, Permutation};

/// A finite value or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(u32),
    Infinite,
}

impl Bound {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Infinite => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => s.serialize_u32(*v),
            Bound::Infinite => s.serialize_str("inf"),
        }
    }
}

/// The associated triple `(a, b, c)` of an avoider.
///
/// For a 321-containing avoider, `a` is the last "1" of a 321, `b` the rightmost
/// entry left of `a` that exceeds `a`, and `c` the first non-LRMax entry after
/// `a` (or `∞`). A 321-avoider gets the degenerate triple with `c = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Triple {
    Degenerate,
    Proper { a: u32, b: u32, c: Bound },
}

impl Triple {
    pub fn a(&self) -> Option<u32> {
        match self {
            Triple::Proper { a, .. } => Some(*a),
            Triple::Degenerate => None,
        }
    }

    pub fn b(&self) -> Option<u32> {
        match self {
            Triple::Proper { b, .. } => Some(*b),
            Triple::Degenerate => None,
        }
    }

    pub fn c(&self) -> Bound {
        match self {
            Triple::Proper { c, .. } => *c,
            Triple::Degenerate => Bound::Finite(1),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Triple::Degenerate)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Triple::Proper { a, b, c } => write!(f, "({a},{b},{c})"),
            Triple::Degenerate => f.write_str("degenerate (c=1)"),
        }
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Triple", 4)?;
        st.serialize_field("a", &self.a())?;
        st.serialize_field("b", &self.b())?;
        st.serialize_field("c", &self.c())?;
        st.serialize_field("degenerate", &self.is_degenerate())?;
        st.end()
    }
}

/// Maximal runs of consecutive integers in `A` (LRMax entries `> c`) and in
/// `B` (non-LRMax entries `>= c`). Each `B` run is kept as its first entry and
/// the remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecomposition {
    a_runs: Vec<Vec<u32>>,
    b_runs: Vec<(u32, Vec<u32>)>,
}

impl RunDecomposition {
    /// Builds and validates a decomposition from explicit runs. The runs must
    /// be maximal, the two run lists equally long, and together they must tile
    /// `[c, n]` with the smallest run in `B` and the largest in `A`.
    pub fn new(c: u32, n: u32, a_runs: Vec<Vec<u32>>, b_runs: Vec<(u32, Vec<u32>)>) -> Result<Self> {
        let a_list: Vec<u32> = a_runs.iter().flatten().copied().collect();
        let b_list: Vec<u32> = b_runs
            .iter()
            .flat_map(|(first, rest)| std::iter::once(*first).chain(rest.iter().copied()))
            .collect();
        let rebuilt = Self::from_lists(&a_list, &b_list)?;
        if rebuilt.a_runs != a_runs || rebuilt.b_runs != b_runs {
            return invalid("runs are not the maximal consecutive runs of their lists");
        }
        let mut all: Vec<u32> = a_list.iter().chain(&b_list).copied().collect();
        all.sort_unstable();
        if all != (c..=n).collect::<Vec<_>>() {
            return invalid(format!("runs do not tile [{c}, {n}]"));
        }
        if b_list.first() != Some(&c) || a_list.last() != Some(&n) {
            return invalid("smallest run must start at c in B and largest must end at n in A");
        }
        Ok(rebuilt)
    }

    /// Splits two increasing lists into maximal consecutive runs.
    pub fn from_lists(a_list: &[u32], b_list: &[u32]) -> Result<Self> {
        let a_runs = split_runs(a_list)?;
        let b_runs: Vec<(u32, Vec<u32>)> = split_runs(b_list)?
            .into_iter()
            .map(|run| (run[0], run[1..].to_vec()))
            .collect();
        if a_runs.len() != b_runs.len() {
            return invalid(format!(
                "A has {} runs but B has {}",
                a_runs.len(),
                b_runs.len()
            ));
        }
        Ok(RunDecomposition { a_runs, b_runs })
    }

    pub fn a_runs(&self) -> &[Vec<u32>] {
        &self.a_runs
    }

    pub fn b_runs(&self) -> &[(u32, Vec<u32>)] {
        &self.b_runs
    }

    /// Common run count `t`.
    pub fn run_count(&self) -> usize {
        self.a_runs.len()
    }

    /// `A_t B_t^r A_{t-1} b_t B_{t-1}^r … A_1 b_2 B_1^r`. `b_1 = c` is not emitted.
    fn interleave(&self, out: &mut Vec<u32>) {
        let t = self.run_count();
        for i in (0..t).rev() {
            out.extend_from_slice(&self.a_runs[i]);
            if i + 1 < t {
                out.push(self.b_runs[i + 1].0);
            }
            out.extend(self.b_runs[i].1.iter().rev());
        }
    }
}

fn split_runs(list: &[u32]) -> Result<Vec<Vec<u32>>> {
    let mut runs: Vec<Vec<u32>> = Vec::new();
    for &v in list {
        match runs.last_mut() {
            Some(run) if *run.last().unwrap() + 1 == v => run.push(v),
            Some(run) if *run.last().unwrap() >= v => {
                return invalid(format!("list is not increasing at {v}"));
            }
            _ => runs.push(vec![v]),
        }
    }
    Ok(runs)
}

/// Orders the peak-insertion set: the interleaved runs, then (for a proper
/// triple) the terminal segment `b, b-1, …, a+1, b+1`.
pub fn order_runs(triple: &Triple, runs: &RunDecomposition) -> Vec<u32> {
    let mut out = Vec::new();
    runs.interleave(&mut out);
    push_terminal_segment(triple, &mut out);
    out
}

fn push_terminal_segment(triple: &Triple, out: &mut Vec<u32>) {
    if let Triple::Proper { a, b, .. } = *triple {
        out.extend((a + 1..=b).rev());
        out.push(b + 1);
    }
}

/// Ordering rule for the peak-insertion list. `Reversed` is a deliberately
/// wrong rule used as a negative control by the verification harness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ListOrder {
    #[default]
    Standard,
    Reversed,
}

/// The image `(q, L)` of an avoider.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapImage {
    /// Indecomposable 321-avoider.
    pub q: Permutation,
    /// Heights in `C_{k, |q|-2}`.
    pub heights: HeightSequence,
}

impl Serialize for MapImage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MapImage", 2)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("heights", self.heights.heights())?;
        st.end()
    }
}

impl fmt::Display for MapImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} heights={}", self.q, self.heights)
    }
}

// ---------------------------------------------------------------------------
// slice-level kernels (0-based positions, input assumed to be an avoider)

/// `pm[k]` = max of `p[..k]`, with `pm[0] = 0`.
fn prefix_max(p: &[u32]) -> Vec<u32> {
    let mut pm = Vec::with_capacity(p.len());
    let mut max = 0;
    for &v in p {
        pm.push(max);
        max = max.max(v);
    }
    pm
}

/// Position of the last entry that is the "1" of some 321.
pub(crate) fn last_one_position(p: &[u32]) -> Option<usize> {
    let pm = prefix_max(p);
    (0..p.len())
        .rev()
        .find(|&j| (0..j).any(|k| p[k] > p[j] && pm[k] > p[k]))
}

/// Blue entries in increasing order.
pub(crate) fn blue_set(p: &[u32]) -> Vec<u32> {
    let n = p.len();
    let pm = prefix_max(p);
    let mut out = Vec::new();
    for l in 0..n {
        let v = p[l];
        let middle_of_321 = pm[l] > v && p[l + 1..].iter().any(|&x| x < v);
        let last_of_4312 = || {
            // scan for i < j < k < l with p_i > p_j > v > p_k
            let mut big_max = 0;
            let mut big_descent = false;
            for &x in &p[..l] {
                if x > v {
                    big_descent |= x < big_max;
                    big_max = big_max.max(x);
                } else if big_descent {
                    return true;
                }
            }
            false
        };
        if middle_of_321 || last_of_4312() {
            out.push(v);
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn peak_blue_of(p: &[u32]) -> Option<u32> {
    last_one_position(p).map(|j| p[j].max(p[j - 1]))
}

#[derive(Clone, Copy, Debug)]
struct Located {
    triple: Triple,
    /// 0-based position of `a` (unused when degenerate).
    a_pos: usize,
}

fn locate_triple(p: &[u32]) -> Located {
    let Some(j) = last_one_position(p) else {
        return Located { triple: Triple::Degenerate, a_pos: 0 };
    };
    let a = p[j];
    let b = *p[..j]
        .iter()
        .rev()
        .find(|&&x| x > a)
        .expect("the last 1 of a 321 has a larger entry to its left");
    let pm = prefix_max(p);
    let c = (j + 1..p.len())
        .find(|&k| pm[k] > p[k])
        .map_or(Bound::Infinite, |k| Bound::Finite(p[k]));
    Located { triple: Triple::Proper { a, b, c }, a_pos: j }
}

fn insertion_list_of(p: &[u32], order: ListOrder) -> Vec<u32> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let triple = locate_triple(p).triple;
    let mut out = Vec::new();
    if let Bound::Finite(c) = triple.c() {
        let pm = prefix_max(p);
        let mut a_list = Vec::new();
        let mut b_list = Vec::new();
        for (k, &v) in p.iter().enumerate() {
            let lrmax = v > pm[k];
            if lrmax && v > c {
                a_list.push(v);
            } else if !lrmax && v >= c {
                b_list.push(v);
            }
        }
        let runs = RunDecomposition::from_lists(&a_list, &b_list)
            .expect("A and B of an avoider split into equally many increasing runs");
        runs.interleave(&mut out);
    }
    push_terminal_segment(&triple, &mut out);
    if order == ListOrder::Reversed {
        out.reverse();
    }
    out
}

/// 1-based insertion position for `y`, or `None` if `y` is outside the
/// peak-insertion set.
fn insertion_position_of(p: &[u32], located: &Located, y: u32) -> Option<usize> {
    let n = p.len() as u32;
    if n <= 1 {
        return None;
    }
    let rightmost_below = |y: u32| p.iter().rposition(|&z| z < y).map(|i| i + 1);
    match located.triple {
        Triple::Degenerate => (2..=n).contains(&y).then(|| rightmost_below(y)).flatten(),
        Triple::Proper { a, b, c } => {
            if a < y && y <= b {
                Some(located.a_pos + 2)
            } else if y == b + 1 {
                Some(located.a_pos + 1)
            } else {
                match c {
                    Bound::Finite(c) if c < y && y <= n => rightmost_below(y),
                    _ => None,
                }
            }
        }
    }
}

fn forward_of(p: &[u32], order: ListOrder) -> Result<(Vec<u32>, Vec<u32>)> {
    debug_assert!(crate::oracle::is_avoider(p), "{p:?}");
    let mut current = p.to_vec();
    let mut recorded = Vec::new();
    while let Some(y) = peak_blue_of(&current) {
        let next = delete_value(&current, y);
        let list = insertion_list_of(&next, order);
        let h = list.iter().position(|&v| v == y).ok_or_else(|| {
            Error::Invariant(format!(
                "peak blue {y} of {current:?} is missing from the insertion list {list:?} of {next:?}"
            ))
        })?;
        recorded.push(h as u32 + 1);
        current = next;
    }
    recorded.reverse();
    Ok((current, recorded))
}

fn inverse_of(q: &[u32], heights: &[u32], order: ListOrder) -> Result<Vec<u32>> {
    debug_assert!(is_indecomposable(q) && last_one_position(q).is_none(), "{q:?}");
    let mut current = q.to_vec();
    for (step, &h) in heights.iter().enumerate() {
        let list = insertion_list_of(&current, order);
        if h == 0 || h as usize > list.len() {
            return Err(Error::InvalidHeight {
                step: step + 1,
                height: h as usize,
                len: list.len(),
            });
        }
        let y = list[h as usize - 1];
        let located = locate_triple(&current);
        let pos = insertion_position_of(&current, &located, y)
            .expect("every listed value has an insertion position");
        current = insert_value(&current, pos - 1, y);
    }
    Ok(current)
}

// ---------------------------------------------------------------------------
// validated entry points

/// Ok iff `p` is an indecomposable {4321, 3241}-avoider.
pub fn check_avoider(p: &Permutation) -> Result<()> {
    if !p.is_indecomposable() {
        let comps: Vec<String> = p.components().iter().map(|c| c.to_string()).collect();
        return domain(format!(
            "{p} is not indecomposable (components: {})",
            if comps.is_empty() { "none".to_string() } else { comps.join(" | ") }
        ));
    }
    if let Some((pat, occ)) = PatternSet::avoider_class().first_occurrence(p) {
        let occ: Vec<String> = occ.iter().map(|i| i.to_string()).collect();
        return domain(format!("{p} contains {} at positions {}", compact(pat), occ.join(",")));
    }
    Ok(())
}

pub fn is_avoider(p: &Permutation) -> bool {
    check_avoider(p).is_ok()
}

fn compact(p: &Permutation) -> String {
    p.entries().iter().map(|v| v.to_string()).collect()
}

fn check_321_avoider(q: &Permutation) -> Result<()> {
    if !is_indecomposable(q.entries()) {
        return domain(format!("{q} is not indecomposable"));
    }
    if let Some(occ) = q.find_pattern(&Permutation::from_vec_unchecked(vec![3, 2, 1])) {
        let occ: Vec<String> = occ.iter().map(|i| i.to_string()).collect();
        return domain(format!("{q} contains 321 at positions {}", occ.join(",")));
    }
    Ok(())
}

/// Entries that play the "2" in a 321 or a 4312, in increasing order.
pub fn blue_entries(p: &Permutation) -> Result<Vec<u32>> {
    check_avoider(p)?;
    Ok(blue_set(p.entries()))
}

pub fn peak_blue(p: &Permutation) -> Result<u32> {
    check_avoider(p)?;
    match peak_blue_of(p.entries()) {
        Some(y) => Ok(y),
        None => domain(format!("{p} avoids 321 and has no peak blue entry")),
    }
}

pub fn associated_triple(p: &Permutation) -> Result<Triple> {
    check_avoider(p)?;
    let triple = locate_triple(p.entries()).triple;
    if let Triple::Proper { b, c: Bound::Finite(c), .. } = triple {
        if c <= b {
            return Err(Error::Invariant(format!("{p} has finite c = {c} not exceeding b = {b}")));
        }
    }
    Ok(triple)
}

/// `[a+1, b+1] ∪ [c+1, n]` (or `[2, n]` for a 321-avoider), increasing.
pub fn peak_insertion_set(p: &Permutation) -> Result<Vec<u32>> {
    let mut set = peak_insertion_list(p)?;
    set.sort_unstable();
    Ok(set)
}

pub fn peak_insertion_list(p: &Permutation) -> Result<Vec<u32>> {
    peak_insertion_list_with(p, ListOrder::Standard)
}

pub fn peak_insertion_list_with(p: &Permutation, order: ListOrder) -> Result<Vec<u32>> {
    check_avoider(p)?;
    Ok(insertion_list_of(p.entries(), order))
}

/// The unique 1-based position `i` such that `p ⊕_i y` is an avoider whose
/// peak blue is `y` and which has one more blue entry than `p`.
pub fn insertion_position(p: &Permutation, y: u32) -> Result<usize> {
    check_avoider(p)?;
    let located = locate_triple(p.entries());
    match insertion_position_of(p.entries(), &located, y) {
        Some(i) => Ok(i),
        None => domain(format!("{y} is not in the peak-insertion set of {p}")),
    }
}

pub fn forward_map(p: &Permutation) -> Result<MapImage> {
    forward_map_with(p, ListOrder::Standard)
}

pub fn forward_map_with(p: &Permutation, order: ListOrder) -> Result<MapImage> {
    check_avoider(p)?;
    let (q, recorded) = forward_of(p.entries(), order)?;
    let bound = q.len() as i64 - 2;
    let heights = HeightSequence::new(recorded, bound)
        .map_err(|e| Error::Invariant(format!("image of {p} has an invalid height sequence: {e}")))?;
    Ok(MapImage {
        q: Permutation::from_vec_unchecked(q),
        heights,
    })
}

pub fn inverse_map(q: &Permutation, heights: &HeightSequence) -> Result<Permutation> {
    inverse_map_with(q, heights, ListOrder::Standard)
}

pub fn inverse_map_with(q: &Permutation, heights: &HeightSequence, order: ListOrder) -> Result<Permutation> {
    check_321_avoider(q)?;
    let bound = q.len() as i64 - 2;
    if heights.bound() != bound {
        return domain(format!(
            "heights are declared in C_(k,{}) but q has length {} (expected r = {bound})",
            heights.bound(),
            q.len()
        ));
    }
    let p = inverse_of(q.entries(), heights.heights(), order)?;
    Ok(Permutation::from_vec_unchecked(p))
}

/// Convenience wrapper that validates raw heights against `q`.
pub fn inverse_map_heights(q: &Permutation, heights: &[u32]) -> Result<Permutation> {
    let seq = HeightSequence::new(heights.to_vec(), q.len() as i64 - 2)?;
    inverse_map(q, &seq)
}

/// Everything the bijection knows about one avoider.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub permutation: Permutation,
    pub blue: Vec<u32>,
    pub peak_blue: Option<u32>,
    pub triple: Triple,
    pub insertion_set: Vec<u32>,
    pub insertion_list: Vec<u32>,
    pub image: MapImage,
}

pub fn analyze(p: &Permutation) -> Result<Analysis> {
    check_avoider(p)?;
    let entries = p.entries();
    let insertion_list = insertion_list_of(entries, ListOrder::Standard);
    let mut insertion_set = insertion_list.clone();
    insertion_set.sort_unstable();
    Ok(Analysis {
        permutation: p.clone(),
        blue: blue_set(entries),
        peak_blue: peak_blue_of(entries),
        triple: associated_triple(p)?,
        insertion_set,
        insertion_list,
        image: forward_map(p)?,
    })
}
