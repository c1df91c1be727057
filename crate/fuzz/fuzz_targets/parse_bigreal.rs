#![no_main]

use libfuzzer_sys::fuzz_target;
use mzvlab::BigReal;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = s.parse::<BigReal>() {
            assert_eq!(
                x.to_exact_decimal()
                    .parse::<BigReal>()
                    .unwrap()
                    .to_rational(),
                x.to_rational()
            );
        }
    }
});
