mod common;

use dirac1d::step::{klein_uu_product, match_oracle, step_scatter};
use dirac1d::{classify_band, BandCase, Error};
use proptest::prelude::*;

fn assert_matches_oracle(e: f64, v0: f64, m: f64) {
    let lib = step_scatter(e, v0, m).unwrap();
    let o = common::step(e, v0, m).unwrap();
    let scale = 1.0 + o.g.norm();
    assert!(
        (lib.f - o.f).norm() < 1e-10,
        "f at E={e} V0={v0}: {} vs {}",
        lib.f,
        o.f
    );
    assert!(
        (lib.g - o.g).norm() < 1e-10 * scale,
        "g at E={e} V0={v0}: {} vs {}",
        lib.g,
        o.g
    );
    assert!((lib.reflection - o.r).abs() < 1e-10);
    assert!((lib.transmission - o.t).abs() < 1e-10);
}

#[test]
fn every_band_against_kernel_oracle() {
    let m = 1.0;
    let cases = [
        (5.0, 3.0, BandCase::AboveStep),
        (1.5, 8.0, BandCase::KleinTransmitting),
        (-3.0, 2.0, BandCase::FullyNegative),
        (3.5, 3.0, BandCase::FullReflectUpper),
        (2.5, 3.0, BandCase::FullReflectLower),
        (
            0.4,
            3.0,
            BandCase::EvanLeftTravelRight(dirac1d::EvanescentSign::Plus),
        ),
        (
            -0.4,
            3.0,
            BandCase::EvanLeftTravelRight(dirac1d::EvanescentSign::Minus),
        ),
    ];
    for (e, v0, band) in cases {
        assert_eq!(classify_band(e, v0, m), band);
        assert_matches_oracle(e, v0, m);
    }
    assert!(common::step(0.2, 0.5, m).is_none());
    assert!(matches!(
        step_scatter(0.2, 0.5, m),
        Err(Error::NoStates { .. })
    ));
}

#[test]
fn frozen_reference_values() {
    // Independent dense solve in double precision.
    let r = step_scatter(1.5, 8.0, 1.0).unwrap();
    assert!((r.f.re - -0.44616208647843303).abs() < 1e-12);
    assert!((r.g.re - 0.6467433463697411).abs() < 1e-12);
    assert!((r.reflection - 0.19906060741078876).abs() < 1e-12);
    assert!((r.transmission - 0.8009393925892111).abs() < 1e-12);
    let r = step_scatter(1.2, 8.0, 1.0).unwrap();
    assert!((r.reflection - 0.34492580772267895).abs() < 1e-12);
    let r = step_scatter(5.0, 3.0, 1.0).unwrap();
    assert!((r.f.re - 0.17157287525380993).abs() < 1e-12);
    assert!((r.g.re - 1.17157287525381).abs() < 1e-12);
    let r = step_scatter(-3.0, 2.0, 1.0).unwrap();
    assert!((r.f.re - -0.07179676972449067).abs() < 1e-12);
    assert!((r.reflection - 0.005154776142871541).abs() < 1e-12);
    let r = step_scatter(4.0, 1.5, 1.0).unwrap();
    assert!((r.reflection - 0.007042602804607512).abs() < 1e-12);
}

#[test]
fn klein_product_stays_below_one() {
    for v0 in [2.5, 4.0, 8.0, 20.0, 100.0] {
        let bound = (v0 / 2.0 - 1.0) / (v0 / 2.0 + 1.0);
        for i in 0..=200 {
            let e = 1.0 + (v0 - 2.0) * i as f64 / 200.0;
            let p = klein_uu_product(e, v0, 1.0).unwrap();
            assert!(p <= bound + 1e-12, "V0={v0} E={e}: {p} > {bound}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn random_energies_match_oracle(e in -30.0f64..30.0, v0 in 0.0f64..20.0, m in 0.2f64..3.0) {
        let Some(o) = common::step(e, v0, m) else {
            prop_assert_eq!(classify_band(e, v0, m), BandCase::GapNoStates);
            return Ok(());
        };
        let lib = step_scatter(e, v0, m).unwrap();
        let scale = 1.0 + o.g.norm();
        prop_assert!((lib.f - o.f).norm() < 1e-9, "f {} vs {}", lib.f, o.f);
        prop_assert!((lib.g - o.g).norm() < 1e-9 * scale, "g {} vs {}", lib.g, o.g);
        let band = classify_band(e, v0, m);
        if band.is_transmitting() {
            prop_assert!((lib.reflection + lib.transmission - 1.0).abs() < 1e-10);
        } else {
            prop_assert_eq!(lib.reflection, 1.0);
            prop_assert_eq!(lib.transmission, 0.0);
        }
    }

    #[test]
    fn library_oracle_agrees_with_kernel_oracle(e in -30.0f64..30.0, v0 in 0.0f64..20.0) {
        if let (Some(o), Ok(s)) = (common::step(e, v0, 1.0), match_oracle(e, v0, 1.0)) {
            prop_assert!((s.f() - o.f).norm() < 1e-9);
            prop_assert!((s.g() - o.g).norm() < 1e-9 * (1.0 + o.g.norm()));
        }
    }
}
