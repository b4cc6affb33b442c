#![no_main]

use hirzebruch::cli::schema::decode_class;
use hirzebruch::k0::euler_form;
use hirzebruch::SurfaceParams;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = decode_class(text) {
        let _ = euler_form(SurfaceParams::F2, v, v);
        let again = serde_json::to_string(&v).unwrap();
        assert_eq!(decode_class(&again).unwrap(), v);
    }
});
