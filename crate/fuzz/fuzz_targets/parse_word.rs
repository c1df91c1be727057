#![no_main]

use libfuzzer_sys::fuzz_target;
use mzvlab::indices::word_to_index;
use mzvlab::Word;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(word) = s.parse::<Word>() {
            if let Ok(index) = word_to_index(&word) {
                assert_eq!(index.weight() as usize, word.len());
            }
        }
    }
});
