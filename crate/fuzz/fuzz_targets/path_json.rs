#![no_main]

use libfuzzer_sys::fuzz_target;
use qcalc::integral::Path;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(path) = Path::from_json(text) else {
        return;
    };
    assert_eq!(Path::from_json(&path.to_json()).expect("round trip"), path);
    assert!(path.waypoints().len() >= 2 && path.segments_per_leg() >= 1);
});
