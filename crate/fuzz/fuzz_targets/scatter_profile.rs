#![no_main]

use dirac1d::{parse_profile, scatter_profile};
use libfuzzer_sys::fuzz_target;

// First 8 bytes: energy. Rest: profile text.
fuzz_target!(|data: &[u8]| {
    if data.len() < 8 {
        return;
    }
    let energy = f64::from_le_bytes(data[..8].try_into().unwrap());
    let Ok(text) = std::str::from_utf8(&data[8..]) else {
        return;
    };
    let Ok(profile) = parse_profile(text) else {
        return;
    };
    if profile.segments().len() > 64 {
        return;
    }
    let result = scatter_profile(&profile, energy, 1.0);
    let tame = energy.abs() <= 1e3
        && [profile.left_lead(), profile.right_lead()]
            .iter()
            .all(|v| v.abs() <= 1e3)
        && profile
            .segments()
            .iter()
            .all(|s| s.potential.abs() <= 1e3 && s.width <= 1e2);
    if let (true, Ok(r)) = (tame, result) {
        assert!(r.reflection >= 0.0 && r.transmission >= 0.0);
        assert!((r.reflection + r.transmission - 1.0).abs() < 1e-6, "{r:?}");
    }
});
