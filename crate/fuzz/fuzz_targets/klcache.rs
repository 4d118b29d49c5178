#![no_main]

use std::io::Cursor;

use hecke_core::hecke::cache::read_cache;
use libfuzzer_sys::fuzz_target;
use rand::rngs::StdRng;
use rand::SeedableRng;

fuzz_target!(|data: &[u8]| {
    // first byte picks S_n and the revalidation fraction; the rest is the file
    let Some((&sel, body)) = data.split_first() else {
        return;
    };
    let n = 1 + (sel & 3) as usize;
    let fraction = if sel & 4 == 0 { 0.0 } else { 1.0 };
    let mut rng = StdRng::seed_from_u64(u64::from(sel));
    let _ = read_cache(Cursor::new(body), n, fraction, &mut rng);
});
