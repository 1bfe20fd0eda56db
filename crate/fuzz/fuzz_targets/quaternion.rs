#![no_main]

use libfuzzer_sys::fuzz_target;
use qcalc::Quaternion;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(q) = text.parse::<Quaternion>() else {
        return;
    };
    assert!(q.is_finite());
    let again: Quaternion = q.to_string().parse().expect("display parses");
    assert_eq!(again, q);
});
