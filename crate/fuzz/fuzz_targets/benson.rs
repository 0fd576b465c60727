#![no_main]

use disthyp::hypercore::io::parse_benson;
use libfuzzer_sys::fuzz_target;

// The two files are separated by a NUL byte.
fuzz_target!(|data: &str| {
    let (nverts, simplices) = data.split_once('\0').unwrap_or((data, ""));
    let _ = parse_benson(nverts, simplices, None);
});
