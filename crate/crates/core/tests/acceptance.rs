//! Acceptance criteria. Each criterion runs on a single-threaded pool, prints
//! one PASS/FAIL line with its wall time, and the process exits nonzero if any
//! criterion fails or overruns its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use avoider_lab::bijection::{forward_map, inverse_map, order_runs, Bound, RunDecomposition, Triple};
use avoider_lab::enumerate::count_avoiders;
use avoider_lab::paths::{heights_to_path, path_to_heights, LatticePath};
use avoider_lab::series::{f_series, g_series, u_by_formula, IntSeries};
use avoider_lab::verify::{self, SuiteOutcome};
use avoider_lab::{HeightSequence, ListOrder, PatternSet, Permutation};
use num_bigint::BigInt;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<(), String>,
}

fn suite(outcome: SuiteOutcome) -> Result<(), String> {
    if outcome.passed {
        Ok(())
    } else {
        Err(format!("{} failures, first: {:?}", outcome.failure_count, outcome.failures.first()))
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fig4_reproduction() -> Result<(), String> {
    let p: Permutation = "2735164".parse().unwrap();
    let img = forward_map(&p).map_err(|e| e.to_string())?;
    ensure(img.q.to_string() == "2,3,1", format!("q = {}", img.q))?;
    ensure(img.heights.heights() == [2, 3, 1, 2], format!("heights = {}", img.heights))?;
    let seq = HeightSequence::new(vec![2, 3, 1, 2], 1).unwrap();
    let back = inverse_map(&"231".parse().unwrap(), &seq).map_err(|e| e.to_string())?;
    ensure(back == p, format!("inverse = {back}"))
}

fn fig1_reproduction() -> Result<(), String> {
    let path: LatticePath = "UUDUUUDUDD".parse().unwrap();
    let h = path_to_heights(&path).map_err(|e| e.to_string())?;
    ensure(h.heights() == [3, 4, 4, 2], format!("heights = {h}"))?;
    let back = heights_to_path(&[3, 4, 4, 2], 2).map_err(|e| e.to_string())?;
    ensure(back == path, format!("path = {back}"))
}

fn series_vs_stated_coefficients() -> Result<(), String> {
    let f = f_series(3);
    let g = g_series(3);
    let want_f: Vec<BigInt> = [1, 1, 2, 6].into_iter().map(BigInt::from).collect();
    let want_g: Vec<BigInt> = [1, 1, 3].into_iter().map(BigInt::from).collect();
    ensure(f.coefficients() == want_f.as_slice(), format!("F = {f}"))?;
    ensure(&g.coefficients()[1..] == want_g.as_slice(), format!("G = {g}"))
}

fn brute_force_equivalence() -> Result<(), String> {
    let class = PatternSet::avoider_class();
    let f = f_series(9);
    let g = g_series(9);
    for n in 0..=9 {
        let all = BigInt::from(count_avoiders(n, &class, false));
        let indec = BigInt::from(count_avoiders(n, &class, true));
        let u = BigInt::from(u_by_formula(n as u64));
        ensure(&all == f.coeff(n), format!("n = {n}: {all} avoiders vs [x^n]F = {}", f.coeff(n)))?;
        ensure(&indec == g.coeff(n), format!("n = {n}: {indec} indecomposable vs [x^n]G = {}", g.coeff(n)))?;
        ensure(indec == u, format!("n = {n}: {indec} indecomposable vs u_n = {u}"))?;
    }
    Ok(())
}

fn bijectivity_sweep() -> Result<(), String> {
    let (table, outcome) = verify::bijection_sweep(9, ListOrder::Standard);
    ensure(table.len() == 8, "expected rows for n = 2..=9")?;
    for row in &table {
        ensure(row.per_k.len() == row.n - 1, format!("n = {}: k rows", row.n))?;
        for kc in &row.per_k {
            ensure(kc.avoiders == kc.product, format!("n = {}, k = {}: {kc:?}", row.n, kc.k))?;
        }
    }
    suite(outcome)
}

fn counting_identities() -> Result<(), String> {
    suite(verify::indecomposable_321_avoiders(10))?;
    suite(verify::height_sequence_counts(10))?;
    suite(verify::path_bijection(12))
}

fn ordering_table() -> Result<(), String> {
    let runs = RunDecomposition::new(
        10,
        25,
        vec![vec![13, 14, 15], vec![17, 18], vec![22, 23, 24, 25]],
        vec![(10, vec![11, 12]), (16, vec![]), (19, vec![20, 21])],
    )
    .map_err(|e| e.to_string())?;
    let list = order_runs(&Triple::Proper { a: 4, b: 7, c: Bound::Finite(10) }, &runs);
    let want = [22, 23, 24, 25, 21, 20, 17, 18, 19, 13, 14, 15, 16, 12, 11, 7, 6, 5, 8];
    ensure(list == want, format!("ordered = {list:?}"))
}

fn insertion_uniqueness() -> Result<(), String> {
    suite(verify::insertion_uniqueness(7))
}

fn growth_and_structure() -> Result<(), String> {
    suite(verify::growth_law(8, ListOrder::Standard))?;
    suite(verify::structure_lemmas(9))
}

fn exact_algebra() -> Result<(), String> {
    let g = g_series(40);
    let f = f_series(40);
    let product = &f * &(&IntSeries::one(40) - &g);
    ensure(product == IntSeries::one(40), "F(1-G) != 1")?;
    for n in 0..=40 {
        let u = BigInt::from(u_by_formula(n as u64));
        ensure(g.coeff(n) == &u, format!("n = {n}: [x^n]G = {} vs u_n = {u}", g.coeff(n)))?;
    }
    Ok(())
}

const INSTANT: Duration = Duration::from_secs(5);

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "forward/inverse reproduce 2735164 <-> (231, 2312)", limit: INSTANT, run: fig4_reproduction },
        Criterion { id: 2, name: "UUDUUUDUDD <-> heights 3442", limit: INSTANT, run: fig1_reproduction },
        Criterion { id: 3, name: "F = 1,1,2,6 and G = 1,1,3 on stated ranges", limit: INSTANT, run: series_vs_stated_coefficients },
        Criterion { id: 4, name: "brute-force counts equal F, G and u_n for n <= 9", limit: Duration::from_secs(60), run: brute_force_equivalence },
        Criterion { id: 5, name: "per-k cardinalities and both round trips for 2 <= n <= 9", limit: Duration::from_secs(300), run: bijectivity_sweep },
        Criterion { id: 6, name: "321-avoider, C_(k,r) and path-bijection counts", limit: Duration::from_secs(60), run: counting_identities },
        Criterion { id: 7, name: "run ordering for (a,b,c) = (4,7,10), n = 25", limit: INSTANT, run: ordering_table },
        Criterion { id: 8, name: "brute-force insertion uniqueness for n <= 7", limit: Duration::from_secs(120), run: insertion_uniqueness },
        Criterion { id: 9, name: "growth law (n <= 8) and structure lemmas (n <= 9)", limit: Duration::from_secs(120), run: growth_and_structure },
        Criterion { id: 10, name: "F(1-G) = 1 and [x^n]G = u_n for n <= 40", limit: INSTANT, run: exact_algebra },
    ]
}

fn main() -> ExitCode {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let result = pool.install(c.run);
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= c.limit, format!("took {elapsed:.2?}, limit {:?}", c.limit))
        });
        match result {
            Ok(()) => println!("PASS  AC{:<2} {} ({elapsed:.2?})", c.id, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL  AC{:<2} {} ({elapsed:.2?}): {msg}", c.id, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
