#![no_main]

use libfuzzer_sys::fuzz_target;
use micromap_core::link_region;

fuzz_target!(|data: &[u8]| {
    if let Ok(label) = std::str::from_utf8(data) {
        if let Ok(region) = link_region(label) {
            assert_eq!(link_region(region.code()), Ok(region));
        }
    }
});
