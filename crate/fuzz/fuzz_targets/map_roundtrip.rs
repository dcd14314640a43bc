#![no_main]

use avoider_lab::{forward_map, inverse_map, is_avoider, Permutation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(p) = data.parse::<Permutation>() else { return };
    if p.len() > 64 || !is_avoider(&p) {
        return;
    }
    let img = forward_map(&p).expect("avoiders map");
    assert_eq!(inverse_map(&img.q, &img.heights).expect("images invert"), p);
});
