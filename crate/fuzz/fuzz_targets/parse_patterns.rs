#![no_main]

use avoider_lab::{PatternSet, Permutation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(set) = data.parse::<PatternSet>() {
        let again: PatternSet = set.to_string().parse().expect("display form reparses");
        assert_eq!(again, set);
        let text = Permutation::identity(6);
        let _ = set.first_occurrence(&text);
    }
});
