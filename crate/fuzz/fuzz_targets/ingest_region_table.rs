#![no_main]

use libfuzzer_sys::fuzz_target;
use micromap_core::spec_io::ingest_region_table;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = ingest_region_table(text, None, "fuzz");
        let _ = ingest_region_table(text, Some("state"), "fuzz");
    }
});
