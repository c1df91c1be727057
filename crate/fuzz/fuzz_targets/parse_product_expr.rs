#![no_main]

use libfuzzer_sys::fuzz_target;
use mzvlab::ProductExpr;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = s.parse::<ProductExpr>() {
            assert_eq!(e.to_string().parse::<ProductExpr>().unwrap(), e);
        }
    }
});
