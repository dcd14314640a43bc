#![no_main]

use avoider_lab::paths::{heights_to_path, parse_heights};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: (&str, u8)| {
    let (text, ups) = input;
    if let Ok(h) = parse_heights(text) {
        if let Ok(path) = heights_to_path(&h, ups as usize) {
            let back = avoider_lab::path_to_heights(&path).unwrap();
            assert_eq!(back.heights(), h.as_slice());
        }
    }
});
