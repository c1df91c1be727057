#![no_main]

use libfuzzer_sys::fuzz_target;
use mzvlab::MzvExpr;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = s.parse::<MzvExpr>() {
            assert_eq!(e.to_string().parse::<MzvExpr>().unwrap(), e);
        }
    }
});
