#![no_main]

use libfuzzer_sys::fuzz_target;
use qcalc::{AnalyticFunction, Quaternion};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(f) = text.parse::<AnalyticFunction>() else {
        return;
    };
    let printed = f.to_string();
    let again: AnalyticFunction = printed.parse().expect("canonical form parses");
    assert_eq!(again.to_string(), printed);
    // evaluation may fail on domain errors but must not panic
    let _ = f.eval(Quaternion::new(0.3, 0.5, -0.2, 0.1));
    let _ = f.perp_ratio(Quaternion::real(0.7));
});
