#![no_main]

use disthyp::hypercore::io::{instance_json, parse_instance_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(h) = parse_instance_json(data) {
        assert_eq!(parse_instance_json(&instance_json(&h)).expect("dump parses"), h);
    }
});
