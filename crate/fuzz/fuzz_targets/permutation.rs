#![no_main]

use hecke_core::Permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(w) = s.parse::<Permutation>() {
        assert_eq!(w.to_string().parse::<Permutation>().ok(), Some(w.clone()));
        assert!(w.compose(&w.inverse()).unwrap().is_identity());
    }
});
