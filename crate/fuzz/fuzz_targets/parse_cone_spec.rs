#![no_main]

use copositive::cone2d::AngleUnit;
use copositive::format::{format_cone, parse_cone_spec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for unit in [AngleUnit::Degrees, AngleUnit::Radians] {
        if let Ok(cone) = parse_cone_spec(text, unit) {
            let again = parse_cone_spec(&format_cone(&cone, unit), unit).expect("printed cone parses");
            assert!(again.approx_eq(&cone, 1e-9), "{text:?}");
            // exercise the calculus on whatever parsed
            let _ = cone.dual().sum(&cone).intersect(&again.dual());
        }
    }
});
