#![no_main]

use hirzebruch::cli::schema::decode_group_element;
use hirzebruch::collections::{apply_group_element, standard_collection};
use hirzebruch::SurfaceParams;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = decode_group_element(text) {
        let _ = apply_group_element(SurfaceParams::F2, &standard_collection(), &g);
    }
});
