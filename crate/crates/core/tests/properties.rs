use avoider_lab::bijection::{blue_entries, check_avoider, forward_map, inverse_map};
use avoider_lab::paths::{path_to_heights, HeightSequence, LatticePath, Step};
use avoider_lab::{enumerate_avoiders, PatternSet, Permutation};
use proptest::prelude::*;

fn permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// Clamps raw draws into the growth condition of `C_{k,r}`.
fn clamp_heights(raw: &[u32], r: i64) -> Vec<u32> {
    let mut ceiling = (r + 1) as u32;
    raw.iter()
        .map(|&x| {
            let a = 1 + x % ceiling;
            ceiling = a + 1;
            a
        })
        .collect()
}

fn nonnegative_path(max_len: usize) -> impl Strategy<Value = LatticePath> {
    prop::collection::vec(any::<bool>(), 0..=max_len).prop_map(|bits| {
        let mut height = 0i32;
        let steps = bits
            .into_iter()
            .map(|down| {
                if down && height > 0 {
                    height -= 1;
                    Step::Down
                } else {
                    height += 1;
                    Step::Up
                }
            })
            .collect();
        LatticePath::new(steps)
    })
}

proptest! {
    #[test]
    fn insert_then_delete_is_identity(p in permutation(12), i in 1usize..14, y in 1u32..14) {
        let n = p.len();
        prop_assume!(i <= n + 1 && y as usize <= n + 1);
        let q = p.insert_entry(i, y).unwrap();
        prop_assert_eq!(q.delete_entry(y).unwrap(), p);
    }

    #[test]
    fn text_form_round_trips(p in permutation(14)) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn peak_deletion_round_trips(path in nonnegative_path(40)) {
        let h = path_to_heights(&path).unwrap();
        prop_assert_eq!(h.len(), path.downs());
        prop_assert_eq!(h.to_path().unwrap(), path);
    }

    /// Lengths up to 14 lie beyond the exhaustive sweeps.
    #[test]
    fn inverse_then_forward_is_identity(
        m in 2usize..=7,
        pick in any::<prop::sample::Index>(),
        raw in prop::collection::vec(any::<u32>(), 0..=7),
    ) {
        let qs = enumerate_avoiders(m, &PatternSet::three_two_one(), true);
        let q = pick.get(&qs).clone();
        let r = m as i64 - 2;
        let heights = HeightSequence::new(clamp_heights(&raw, r), r).unwrap();
        let p = inverse_map(&q, &heights).unwrap();
        prop_assert!(check_avoider(&p).is_ok());
        prop_assert_eq!(p.len(), m + heights.len());
        prop_assert_eq!(blue_entries(&p).unwrap().len(), heights.len());
        let img = forward_map(&p).unwrap();
        prop_assert_eq!(img.q, q);
        prop_assert_eq!(img.heights, heights);
    }
}
