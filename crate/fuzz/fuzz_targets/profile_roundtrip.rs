#![no_main]

use dirac1d::{parse_profile, write_profile};
use libfuzzer_sys::fuzz_target;

// Anything that parses must survive a write/parse cycle unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(profile) = parse_profile(text) {
        let written = write_profile(&profile);
        let again = parse_profile(&written).expect("written profile must parse");
        assert_eq!(again, profile);
        assert_eq!(write_profile(&again), written);
    }
});
