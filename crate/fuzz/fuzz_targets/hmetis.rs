#![no_main]

use disthyp::hypercore::io::{parse_hmetis, write_hmetis};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(h) = parse_hmetis(data) {
        // Anything accepted must survive a rewrite.
        let again = parse_hmetis(&write_hmetis(&h)).expect("rewritten hMETIS parses");
        assert_eq!(h, again);
    }
});
