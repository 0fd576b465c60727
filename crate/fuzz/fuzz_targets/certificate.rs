#![no_main]

use disthyp::classic::parse_certificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = parse_certificate(data);
});
