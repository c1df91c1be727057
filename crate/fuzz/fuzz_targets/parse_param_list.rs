#![no_main]

use libfuzzer_sys::fuzz_target;
use mzvlab::rational::parse_rational_list;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_rational_list(s);
    }
});
