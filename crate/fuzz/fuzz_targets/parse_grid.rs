#![no_main]

use dirac1d::sweep::GridSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = text.parse::<GridSpec>() {
        assert!(grid.start < grid.end && grid.count >= 2);
        let again: GridSpec = grid.to_string().parse().unwrap();
        assert_eq!(again, grid);
        if grid.count <= 4096 {
            let pts = grid.points();
            assert_eq!(pts.len(), grid.count);
            assert_eq!((pts[0], pts[grid.count - 1]), (grid.start, grid.end));
        }
    }
});
