#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| gaugesets_cli::fuzz_support::region_file(data));
