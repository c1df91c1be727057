#![no_main]

use libfuzzer_sys::fuzz_target;
use mzvlab::evaluator::{format_cache_line, parse_cache_line};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok((index, bits, r)) = parse_cache_line(s) {
            let again = parse_cache_line(&format_cache_line(&index, bits, &r)).unwrap();
            assert_eq!(again, (index, bits, r));
        }
    }
});
