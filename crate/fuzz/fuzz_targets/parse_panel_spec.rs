#![no_main]

use libfuzzer_sys::fuzz_target;
use micromap_core::spec_io::{parse_panel_spec, to_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = parse_panel_spec(text) {
            let again = parse_panel_spec(&to_json(&spec)).expect("serialized spec parses");
            assert_eq!(spec, again);
        }
    }
});
