#![no_main]

use glrmc_core::{parse_pattern, PatternMatrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_pattern(text) {
        let again: PatternMatrix = m.to_string().parse().expect("canonical text reparses");
        assert_eq!(again, m);
        assert_eq!(m.transpose().transpose(), m);
    }
});
