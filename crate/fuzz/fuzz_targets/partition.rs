#![no_main]

use hecke_core::symgroup::parse_partition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    // the transpose allocates one entry per unit of the largest part
    if let Some(p) = parse_partition(s).ok().filter(|p| p.n() <= 1 << 16) {
        assert_eq!(p.transpose().transpose(), p);
        assert_eq!(p.transpose().n(), p.n());
    }
});
