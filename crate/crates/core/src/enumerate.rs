//! Exhaustive enumeration of pattern-avoiding permutations.
//!
//! The search is depth-first over one-line prefixes, trying values in
//! increasing order, so permutations come out in lexicographic order. A prefix
//! that already contains a pattern is abandoned, and so is a proper prefix that
//! closes a component when only indecomposable permutations are wanted. The
//! parallel entry points split the search by first entry and concatenate the
//! per-branch results in branch order.

use rayon::prelude::*;

use crate::perm::{PatternSet, Permutation};

struct Search<'a, F> {
    n: usize,
    patterns: &'a PatternSet,
    indecomposable_only: bool,
    prefix: Vec<u32>,
    used: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[u32])> Search<'_, F> {
    fn descend(&mut self, max_so_far: u32) {
        let depth = self.prefix.len();
        if depth == self.n {
            (self.visit)(&self.prefix);
            return;
        }
        for v in 1..=self.n as u32 {
            if self.used[v as usize] {
                continue;
            }
            let max = max_so_far.max(v);
            let closes_component = max as usize == depth + 1 && depth + 1 < self.n;
            if self.indecomposable_only && closes_component {
                continue;
            }
            self.prefix.push(v);
            if !self.patterns.occurs_at_end(&self.prefix) {
                self.used[v as usize] = true;
                self.descend(max);
                self.used[v as usize] = false;
            }
            self.prefix.pop();
        }
    }
}

fn search_branch<F: FnMut(&[u32])>(
    n: usize,
    patterns: &PatternSet,
    indecomposable_only: bool,
    first: Option<u32>,
    visit: F,
) {
    let mut s = Search {
        n,
        patterns,
        indecomposable_only,
        prefix: Vec::with_capacity(n),
        used: vec![false; n + 1],
        visit,
    };
    match first {
        None => s.descend(0),
        Some(v) => {
            if indecomposable_only && v == 1 && n > 1 {
                return;
            }
            s.prefix.push(v);
            if !patterns.occurs_at_end(&s.prefix) {
                s.used[v as usize] = true;
                s.descend(v);
            }
        }
    }
}

/// Calls `visit` on every avoider of length `n`, in lexicographic order, on the
/// current thread.
pub fn visit_avoiders<F: FnMut(&Permutation)>(
    n: usize,
    patterns: &PatternSet,
    indecomposable_only: bool,
    mut visit: F,
) {
    if n == 0 {
        if !indecomposable_only {
            visit(&Permutation::empty());
        }
        return;
    }
    search_branch(n, patterns, indecomposable_only, None, |p| {
        visit(&Permutation::from_vec_unchecked(p.to_vec()))
    });
}

/// Every permutation of length `n` avoiding all of `patterns`, in lexicographic
/// order. Uses the ambient rayon pool; the output does not depend on its size.
pub fn enumerate_avoiders(n: usize, patterns: &PatternSet, indecomposable_only: bool) -> Vec<Permutation> {
    if n == 0 {
        return if indecomposable_only { Vec::new() } else { vec![Permutation::empty()] };
    }
    let branches: Vec<Vec<Permutation>> = (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            search_branch(n, patterns, indecomposable_only, Some(first), |p| {
                out.push(Permutation::from_vec_unchecked(p.to_vec()))
            });
            out
        })
        .collect();
    branches.into_iter().flatten().collect()
}

/// Number of permutations `enumerate_avoiders` would return, without storing them.
pub fn count_avoiders(n: usize, patterns: &PatternSet, indecomposable_only: bool) -> u64 {
    if n == 0 {
        return u64::from(!indecomposable_only);
    }
    (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            search_branch(n, patterns, indecomposable_only, Some(first), |_| count += 1);
            count
        })
        .sum()
}

/// All `n!` permutations in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    visit_avoiders(n, &PatternSet::default(), false, |p| out.push(p.clone()));
    out
}
