#![no_main]

use libfuzzer_sys::fuzz_target;
use micromap_core::spec_io::ingest_time_series;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = ingest_time_series(text, "fuzz");
    }
});
