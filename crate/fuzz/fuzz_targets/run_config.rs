#![no_main]

use disthyp_cli::config::ConfigFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = serde_json::from_str::<ConfigFile>(data);
});
