//! Exhaustive invariant suites and the verification report.
//!
//! Every suite walks a finite domain completely and records each violation.
//! Work is spread over the ambient rayon pool, but results are collected in
//! enumeration order so reports are identical for any thread count.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{
    self, forward_map_with, insertion_position, inverse_map_with, peak_insertion_list_with, Bound, ListOrder,
    Triple,
};
use crate::enumerate::{count_avoiders, enumerate_avoiders};
use crate::oracle;
use crate::paths::{ballot, catalan, enumerate_height_sequences, path_to_heights, LatticePath};
use crate::perm::{PatternSet, Permutation};
use crate::series::{f_series, g_series, u_by_formula, IntSeries};

const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub passed: bool,
    pub checked: u64,
    pub failure_count: u64,
    /// The first few failures, in enumeration order.
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn from_results(results: impl IntoIterator<Item = Option<String>>) -> Self {
        let mut out = SuiteOutcome::default();
        for r in results {
            out.checked += 1;
            if let Some(msg) = r {
                out.failure_count += 1;
                if out.failures.len() < MAX_RECORDED_FAILURES {
                    out.failures.push(msg);
                }
            }
        }
        out.passed = out.failure_count == 0;
        out
    }

    fn merge(mut self, other: SuiteOutcome) -> Self {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
        self.passed = self.failure_count == 0;
        self
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    if cond {
        None
    } else {
        Some(msg())
    }
}

fn avoiders(n: usize) -> Vec<Permutation> {
    enumerate_avoiders(n, &PatternSet::avoider_class(), true)
}

/// Runs `f` over every avoider of each length in `lengths`, in order.
fn over_avoiders<F>(lengths: impl IntoIterator<Item = usize>, f: F) -> SuiteOutcome
where
    F: Fn(&Permutation) -> Vec<Option<String>> + Sync,
{
    let mut results = Vec::new();
    for n in lengths {
        let per: Vec<Vec<Option<String>>> = avoiders(n).par_iter().map(&f).collect();
        results.extend(per.into_iter().flatten());
    }
    SuiteOutcome::from_results(results)
}

// ---------------------------------------------------------------------------
// permutation primitives

/// Insertion then deletion, and deletion then re-insertion, are identities.
pub fn perm_round_trip(max_n: usize) -> SuiteOutcome {
    let mut results = Vec::new();
    for n in 0..=max_n {
        for p in crate::enumerate::all_permutations(n) {
            for y in 1..=n as u32 + 1 {
                for i in 1..=n + 1 {
                    let back = p.insert_entry(i, y).and_then(|q| q.delete_entry(y));
                    results.push(check(back.as_ref() == Ok(&p), || format!("delete(insert({p}, {i}, {y})) != {p}")));
                }
            }
            for y in 1..=n as u32 {
                let i = p.position_of(y).unwrap();
                let back = p.delete_entry(y).and_then(|q| q.insert_entry(i, y));
                results.push(check(back.as_ref() == Ok(&p), || format!("insert(delete({p}, {y})) != {p}")));
            }
        }
    }
    SuiteOutcome::from_results(results)
}

/// Components re-inflate to the original, and avoidance is componentwise.
pub fn components_structure(max_n: usize) -> SuiteOutcome {
    let class = PatternSet::avoider_class();
    let mut results = Vec::new();
    for n in 0..=max_n {
        for p in crate::enumerate::all_permutations(n) {
            let comps = p.components();
            let mut rebuilt = Vec::with_capacity(n);
            for c in &comps {
                let offset = rebuilt.len() as u32;
                rebuilt.extend(c.entries().iter().map(|&v| v + offset));
            }
            results.push(check(rebuilt == p.entries(), || format!("components of {p} do not reassemble")));
            let whole = class.is_avoided_by(&p);
            let parts = comps.iter().all(|c| class.is_avoided_by(c));
            results.push(check(whole == parts, || format!("{p}: avoidance differs from componentwise avoidance")));
        }
    }
    SuiteOutcome::from_results(results)
}

/// The unrestricted search yields `n!` permutations, and pruned search agrees
/// with filtering all permutations.
pub fn enumeration(max_n: usize) -> SuiteOutcome {
    let mut results = Vec::new();
    let mut factorial = 1u64;
    for n in 0..=max_n {
        if n > 0 {
            factorial *= n as u64;
        }
        let all = crate::enumerate::all_permutations(n);
        results.push(check(all.len() as u64 == factorial, || {
            format!("{} permutations of length {n}, expected {factorial}", all.len())
        }));
        results.push(check(all.windows(2).all(|w| w[0] < w[1]), || format!("length {n} not lexicographic")));
        for set in [PatternSet::avoider_class(), PatternSet::three_two_one()] {
            for indec in [false, true] {
                let filtered: Vec<Permutation> = all
                    .iter()
                    .filter(|p| set.is_avoided_by(p) && (!indec || p.is_indecomposable()))
                    .cloned()
                    .collect();
                let got = enumerate_avoiders(n, &set, indec);
                results.push(check(got == filtered, || {
                    format!("pruned search for {set} (indecomposable={indec}) differs at n = {n}")
                }));
            }
        }
    }
    SuiteOutcome::from_results(results)
}

// ---------------------------------------------------------------------------
// paths and ballot numbers

/// Peak deletion followed by peak insertion reproduces every nonnegative path.
pub fn path_bijection(max_steps: usize) -> SuiteOutcome {
    let mut results = Vec::new();
    for len in 0..=max_steps {
        for p in LatticePath::all_of_length(len).filter(|p| p.classify().nonnegative) {
            let back = path_to_heights(&p).and_then(|h| h.to_path());
            results.push(check(back.as_ref() == Ok(&p), || format!("path {p} does not round trip")));
        }
    }
    SuiteOutcome::from_results(results)
}

/// `|C_{k,r}| = ballot(k, r)` for `k + r <= max_sum`, `r >= -1`.
pub fn height_sequence_counts(max_sum: usize) -> SuiteOutcome {
    let mut results = Vec::new();
    for k in 0..=max_sum {
        for r in -1..=(max_sum - k) as i64 {
            let count = enumerate_height_sequences(k, r).len();
            let expected = ballot(k as u64, r);
            results.push(check(BigUint::from(count) == expected, || {
                format!("|C_({k},{r})| = {count}, ballot = {expected}")
            }));
        }
    }
    SuiteOutcome::from_results(results)
}

/// Indecomposable Dyck paths of size `n` number `C_{n-1}`.
pub fn indecomposable_dyck_paths(max_size: usize) -> SuiteOutcome {
    SuiteOutcome::from_results((1..=max_size).map(|size| {
        let count = LatticePath::all_of_length(2 * size)
            .filter(|p| p.classify().component_count == 1)
            .count();
        let expected = catalan(size as u64 - 1);
        check(BigUint::from(count) == expected, || {
            format!("{count} indecomposable Dyck paths of size {size}, expected {expected}")
        })
    }))
}

/// Indecomposable 321-avoiders of length `n` number `C_{n-1}`.
pub fn indecomposable_321_avoiders(max_n: usize) -> SuiteOutcome {
    SuiteOutcome::from_results((1..=max_n).map(|n| {
        let count = count_avoiders(n, &PatternSet::three_two_one(), true);
        let expected = catalan(n as u64 - 1);
        check(BigUint::from(count) == expected, || {
            format!("{count} indecomposable 321-avoiders of length {n}, expected {expected}")
        })
    }))
}

// ---------------------------------------------------------------------------
// the bijection

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KCounts {
    pub k: usize,
    /// Avoiders of this length with `k` blue entries.
    pub avoiders: u64,
    /// `C_{n-1-k} · ballot(k, n-k-2)`.
    pub product: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthCounts {
    pub n: usize,
    pub per_k: Vec<KCounts>,
    pub round_trip_failures: u64,
}

/// For each `n` in `2..=max_n`: bins avoiders by blue count, compares each bin
/// with the product cardinality, and checks both compositions of the forward
/// and inverse maps are identities on their full domains.
pub fn bijection_sweep(max_n: usize, order: ListOrder) -> (Vec<LengthCounts>, SuiteOutcome) {
    let mut table = Vec::new();
    let mut outcome = SuiteOutcome::from_results(std::iter::empty());
    for n in 2..=max_n {
        let avoiders = avoiders(n);
        let forward: Vec<(Option<usize>, Vec<Option<String>>)> = avoiders
            .par_iter()
            .map(|p| {
                let img = match forward_map_with(p, order) {
                    Ok(img) => img,
                    Err(e) => return (None, vec![Some(format!("forward({p}) failed: {e}"))]),
                };
                let k = img.heights.len();
                let blue = bijection::blue_set(p.entries()).len();
                let back = inverse_map_with(&img.q, &img.heights, order);
                let checks = vec![
                    check(k == blue, || format!("{p}: {k} heights but {blue} blue entries")),
                    check(img.q.len() == n - k, || format!("{p}: image q = {} has wrong length", img.q)),
                    check(back.as_ref() == Ok(p), || format!("inverse(forward({p})) = {back:?}")),
                ];
                (Some(k), checks)
            })
            .collect();

        let mut bins = vec![0u64; n - 1];
        let mut results = Vec::new();
        for (k, checks) in forward {
            if let Some(k) = k {
                if k < bins.len() {
                    bins[k] += 1;
                } else {
                    results.push(Some(format!("blue count {k} outside 0..={} at n = {n}", n - 2)));
                }
            }
            results.extend(checks);
        }

        let mut per_k = Vec::new();
        for (k, &count) in bins.iter().enumerate() {
            let product = catalan((n - 1 - k) as u64) * ballot(k as u64, (n - k - 2) as i64);
            let product = u64::try_from(product).expect("product fits in u64 at verification scale");
            results.push(check(count == product, || {
                format!("n = {n}, k = {k}: {count} avoiders but product cardinality {product}")
            }));

            let qs = enumerate_avoiders(n - k, &PatternSet::three_two_one(), true);
            let ls = enumerate_height_sequences(k, (n - k - 2) as i64);
            results.push(check((qs.len() * ls.len()) as u64 == product, || {
                format!("n = {n}, k = {k}: enumerated product {} x {}", qs.len(), ls.len())
            }));
            let pairs: Vec<(&Permutation, &crate::paths::HeightSequence)> =
                qs.iter().flat_map(|q| ls.iter().map(move |l| (q, l))).collect();
            let backward: Vec<Option<String>> = pairs
                .par_iter()
                .map(|(q, l)| {
                    let p = match inverse_map_with(q, l, order) {
                        Ok(p) => p,
                        Err(e) => return Some(format!("inverse({q}, {l}) failed: {e}")),
                    };
                    match forward_map_with(&p, order) {
                        Ok(img) if img.q == **q && img.heights == **l => None,
                        Ok(img) => Some(format!("forward(inverse({q}, {l})) = ({}, {})", img.q, img.heights)),
                        Err(e) => Some(format!("forward({p}) failed: {e}")),
                    }
                })
                .collect();
            results.extend(backward);
            per_k.push(KCounts { k, avoiders: count, product });
        }

        let length_outcome = SuiteOutcome::from_results(results);
        table.push(LengthCounts {
            n,
            per_k,
            round_trip_failures: length_outcome.failure_count,
        });
        outcome = outcome.merge(length_outcome);
    }
    (table, outcome)
}

/// Deleting the peak blue entry leaves an avoider whose blue entries are
/// exactly the remaining blue entries, relabelled.
pub fn deletion_stability(max_n: usize) -> SuiteOutcome {
    over_avoiders(1..=max_n, |p| {
        let e = p.entries();
        let Some(y) = oracle::peak_blue(e) else {
            return Vec::new();
        };
        let q = p.delete_entry(y).unwrap();
        let expected: Vec<u32> = oracle::blue_entries(e)
            .into_iter()
            .filter(|&v| v != y)
            .map(|v| if v > y { v - 1 } else { v })
            .collect();
        let got = oracle::blue_entries(q.entries());
        vec![
            check(oracle::is_avoider(q.entries()), || format!("{p} minus {y} = {q} is not an avoider")),
            check(got == expected, || format!("{p} minus {y}: blue {got:?}, expected {expected:?}")),
        ]
    })
}

/// Brute force over every `(y, i)`: the admissible insertions are exactly the
/// peak-insertion set at the computed positions.
pub fn insertion_uniqueness(max_n: usize) -> SuiteOutcome {
    over_avoiders(1..=max_n, |p| {
        let brute = oracle::admissible_insertions(p.entries());
        let mut computed: Vec<(u32, usize)> = bijection::peak_insertion_set(p)
            .unwrap()
            .into_iter()
            .map(|y| (y, insertion_position(p, y).unwrap()))
            .collect();
        computed.sort_unstable();
        vec![check(brute == computed, || {
            format!("{p}: brute-force insertions {brute:?}, computed {computed:?}")
        })]
    })
}

/// Inserting the `h`-th listed value yields an avoider whose list has length `h + 1`.
pub fn growth_law(max_n: usize, order: ListOrder) -> SuiteOutcome {
    over_avoiders(1..=max_n, |p| {
        let list = peak_insertion_list_with(p, order).unwrap();
        list.iter()
            .enumerate()
            .map(|(idx, &y)| {
                let h = idx + 1;
                let i = insertion_position(p, y).unwrap();
                let q = p.insert_entry(i, y).unwrap();
                match peak_insertion_list_with(&q, order) {
                    Ok(next) => check(next.len() == h + 1, || {
                        format!("{p}: inserting y = {y} (h = {h}) gives list length {}", next.len())
                    }),
                    Err(e) => Some(format!("{p}: inserting y = {y} gives a non-avoider: {e}")),
                }
            })
            .collect()
    })
}

/// Witness `w`, `c > b`, and the four structural facts about `(a, b, c)`.
pub fn structure_lemmas(max_n: usize) -> SuiteOutcome {
    over_avoiders(1..=max_n, |p| {
        let Triple::Proper { a, b, c } = bijection::associated_triple(p).unwrap() else {
            return Vec::new();
        };
        let e = p.entries();
        let pos = |v: u32| p.position_of(v).unwrap();
        let (pa, pb) = (pos(a), pos(b));
        let lrmax = p.left_to_right_maxima();
        let mut out = vec![check(e[..pb - 1].iter().any(|&w| w > b), || format!("{p}: no w > b left of b"))];
        match c {
            Bound::Finite(c) => {
                out.push(check(c > b, || format!("{p}: c = {c} <= b = {b}")));
                out.push(check(e[pa..].iter().all(|&x| x >= c), || format!("{p}: entry after a below c = {c}")));
                if c > b + 1 {
                    out.push(check(pos(b + 1) < pb, || format!("{p}: b+1 not left of b")));
                }
                let pc = pos(c);
                out.push(check(
                    e[..pc - 1].iter().filter(|&&z| z > b).all(|z| lrmax.contains(z)),
                    || format!("{p}: an entry > b left of c is not a LRMax"),
                ));
            }
            Bound::Infinite => {
                out.push(check(pos(b + 1) < pb, || format!("{p}: b+1 not left of b")));
                out.push(check(pa == e.len(), || format!("{p}: c infinite but a is not last")));
                out.push(check(
                    e.iter().filter(|&&z| z > b).all(|z| lrmax.contains(z)),
                    || format!("{p}: an entry > b is not a LRMax"),
                ));
            }
        }
        out
    })
}

// ---------------------------------------------------------------------------
// series

/// `F·(1 − G) = 1` and `[x^n] G = u_n` up to `order`.
pub fn series_identities(order: usize) -> SuiteOutcome {
    let g = g_series(order);
    let f = f_series(order);
    let product = &f * &(&IntSeries::one(order) - &g);
    let mut results = vec![check(product == IntSeries::one(order), || format!("F(1-G) = {product}"))];
    for n in 0..=order {
        let u = num_bigint::BigInt::from(u_by_formula(n as u64));
        results.push(check(g.coeff(n) == &u, || format!("[x^{n}] G = {}, u_{n} = {u}", g.coeff(n))));
    }
    SuiteOutcome::from_results(results)
}

/// Brute-force avoider counts match the coefficients of `F` and `G`.
pub fn series_vs_enumeration(max_n: usize) -> SuiteOutcome {
    let g = g_series(max_n);
    let f = f_series(max_n);
    let class = PatternSet::avoider_class();
    let mut results = Vec::new();
    for n in 0..=max_n {
        let all = num_bigint::BigInt::from(count_avoiders(n, &class, false));
        let indec = num_bigint::BigInt::from(count_avoiders(n, &class, true));
        let u = num_bigint::BigInt::from(u_by_formula(n as u64));
        results.push(check(&all == f.coeff(n), || format!("n = {n}: {all} avoiders, [x^n] F = {}", f.coeff(n))));
        results.push(check(&indec == g.coeff(n), || format!("n = {n}: {indec} indecomposable, [x^n] G = {}", g.coeff(n))));
        results.push(check(indec == u, || format!("n = {n}: {indec} indecomposable, u_n = {u}")));
    }
    SuiteOutcome::from_results(results)
}

// ---------------------------------------------------------------------------
// report

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub order: ListOrder,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub max_n: usize,
    pub passed: bool,
    pub round_trip_failures: u64,
    pub bijection: Vec<LengthCounts>,
    pub suites: BTreeMap<String, SuiteOutcome>,
    pub duration_ms: u128,
}

/// Runs every suite at a scale derived from `max_n`; suites whose cost grows
/// fastest are capped below it.
pub fn run_verification(config: VerifyConfig) -> VerificationReport {
    let start = Instant::now();
    let n = config.max_n;
    let mut suites = BTreeMap::new();
    suites.insert("perm_round_trip".into(), perm_round_trip(n.min(6)));
    suites.insert("components".into(), components_structure(n.min(7)));
    suites.insert("enumeration".into(), enumeration(n.min(7)));
    suites.insert("path_bijection".into(), path_bijection((2 * n).min(12)));
    suites.insert("height_sequence_counts".into(), height_sequence_counts(n));
    suites.insert("indecomposable_dyck_paths".into(), indecomposable_dyck_paths(n.min(8)));
    suites.insert("indecomposable_321_avoiders".into(), indecomposable_321_avoiders(n));
    let (bijection, sweep) = bijection_sweep(n, config.order);
    let round_trip_failures = sweep.failure_count;
    suites.insert("bijection_sweep".into(), sweep);
    suites.insert("deletion_stability".into(), deletion_stability(n.min(8)));
    suites.insert("insertion_uniqueness".into(), insertion_uniqueness(n.min(7)));
    suites.insert("growth_law".into(), growth_law(n.min(8), config.order));
    suites.insert("structure_lemmas".into(), structure_lemmas(n));
    suites.insert("series_identities".into(), series_identities(40));
    suites.insert("series_vs_enumeration".into(), series_vs_enumeration(n));
    let passed = suites.values().all(|s| s.passed);
    VerificationReport {
        schema: "v1",
        max_n: n,
        passed,
        round_trip_failures,
        bijection,
        suites,
        duration_ms: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_report_passes() {
        let report = run_verification(VerifyConfig { max_n: 5, order: ListOrder::Standard });
        for (name, s) in &report.suites {
            assert!(s.passed, "{name}: {:?}", s.failures);
        }
        assert!(report.passed);
        assert_eq!(report.bijection.len(), 4);
        let n5 = &report.bijection[3];
        let counts: Vec<u64> = n5.per_k.iter().map(|r| r.avoiders).collect();
        // C_4·c(0,3), C_3·c(1,2), C_2·c(2,1), C_1·c(3,0) = 14, 15, 10, 5
        assert_eq!(counts, vec![14, 15, 10, 5]);
    }

    #[test]
    fn corrupted_order_fails() {
        let report = run_verification(VerifyConfig { max_n: 5, order: ListOrder::Reversed });
        assert!(!report.passed);
        assert!(!report.suites["growth_law"].passed);
    }

    #[test]
    fn trivial_scale_passes() {
        assert!(run_verification(VerifyConfig { max_n: 2, order: ListOrder::Standard }).passed);
    }
}
