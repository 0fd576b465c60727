#![no_main]

use disthyp_cli::config::InstanceSource;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = InstanceSource::parse_generator(data);
});
