//! Brute-force reference implementations, written straight from the
//! definitions by enumerating pattern occurrences. They share no code with the
//! kernels in [`crate::bijection`] and exist so the verification suites have
//! something independent to compare against.

use crate::perm::{insert_value, is_indecomposable, PatternSet, Permutation};

/// Every increasing triple of 0-based positions `(i, j, k)` whose values form a 321.
fn occurrences_321(p: &[u32]) -> Vec<(usize, usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if p[i] > p[j] && p[j] > p[k] {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// Blue entries: the "2" of any 321 or 4312 occurrence, increasing.
pub fn blue_entries(p: &[u32]) -> Vec<u32> {
    let n = p.len();
    let mut blue: Vec<u32> = occurrences_321(p).into_iter().map(|(_, j, _)| p[j]).collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    // 4312: values rank as 4, 3, 1, 2
                    if p[i] > p[j] && p[j] > p[l] && p[l] > p[k] {
                        blue.push(p[l]);
                    }
                }
            }
        }
    }
    blue.sort_unstable();
    blue.dedup();
    blue
}

/// Larger of the last "1" of a 321 and its left neighbour.
pub fn peak_blue(p: &[u32]) -> Option<u32> {
    let last = occurrences_321(p).into_iter().map(|(_, _, k)| k).max()?;
    Some(p[last].max(p[last - 1]))
}

pub fn triple(p: &[u32]) -> crate::bijection::Triple {
    use crate::bijection::{Bound, Triple};
    let Some(j) = occurrences_321(p).into_iter().map(|(_, _, k)| k).max() else {
        return Triple::Degenerate;
    };
    let a = p[j];
    let b = (0..j).rev().map(|i| p[i]).find(|&x| x > a).unwrap();
    let is_lrmax = |k: usize| p[..k].iter().all(|&x| x < p[k]);
    let c = (j + 1..p.len())
        .find(|&k| !is_lrmax(k))
        .map_or(Bound::Infinite, |k| Bound::Finite(p[k]));
    Triple::Proper { a, b, c }
}

pub fn is_avoider(p: &[u32]) -> bool {
    is_indecomposable(p) && PatternSet::avoider_class().is_avoided_by(&Permutation::from_vec_unchecked(p.to_vec()))
}

/// All `(y, i)` with `1 <= y, i <= n + 1` such that `p ⊕_i y` is an avoider
/// whose peak blue entry is `y` and which has exactly one more blue entry than
/// `p`. Positions are 1-based.
pub fn admissible_insertions(p: &[u32]) -> Vec<(u32, usize)> {
    let n = p.len();
    let base = blue_entries(p).len();
    let mut out = Vec::new();
    for y in 1..=n as u32 + 1 {
        for i in 1..=n + 1 {
            let q = insert_value(p, i - 1, y);
            if is_avoider(&q) && peak_blue(&q) == Some(y) && blue_entries(&q).len() == base + 1 {
                out.push((y, i));
            }
        }
    }
    out
}
