#![no_main]

use avoider_lab::Permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(p) = data.parse::<Permutation>() {
        let again: Permutation = p.to_string().parse().expect("display form reparses");
        assert_eq!(again, p);
        let _ = p.components();
    }
});
