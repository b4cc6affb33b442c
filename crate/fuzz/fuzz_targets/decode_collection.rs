#![no_main]

use hirzebruch::cli::schema::decode_collection;
use hirzebruch::collections::{gram, is_exceptional_collection};
use hirzebruch::SurfaceParams;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = decode_collection(text) {
        let _ = gram(SurfaceParams::F2, &c);
        let _ = is_exceptional_collection(SurfaceParams::F2, &c);
    }
});
