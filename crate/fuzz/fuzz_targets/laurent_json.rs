#![no_main]

use hecke_core::LaurentPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(p) = serde_json::from_slice::<LaurentPoly>(data) else {
        return;
    };
    // accepted input must round-trip through the canonical form
    let text = serde_json::to_string(&p).expect("serializable");
    let q: LaurentPoly = serde_json::from_str(&text).expect("canonical form parses");
    assert_eq!(p, q);
    assert_eq!(p.bar().bar(), p);
});
