#![no_main]

use libfuzzer_sys::fuzz_target;
use mzvlab::Index;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(index) = s.parse::<Index>() {
            assert_eq!(index.to_string().parse::<Index>().unwrap(), index);
        }
    }
});
