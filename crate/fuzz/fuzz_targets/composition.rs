#![no_main]

use hecke_core::symgroup::parse_composition;
use hecke_core::ParabolicData;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(comp) = parse_composition(s) else {
        return;
    };
    // keep the parabolic data small enough to enumerate
    if comp.iter().sum::<usize>() <= 8 {
        let p = ParabolicData::new(comp).expect("parsed compositions are valid");
        let _ = p.short_reps();
    }
});
