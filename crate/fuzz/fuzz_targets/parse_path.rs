#![no_main]

use avoider_lab::paths::path_to_heights;
use avoider_lab::LatticePath;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(path) = data.parse::<LatticePath>() {
        assert_eq!(path.to_string().parse::<LatticePath>().unwrap(), path);
        if let Ok(h) = path_to_heights(&path) {
            assert_eq!(h.to_path().unwrap(), path);
        }
    }
});
