#![no_main]

use libfuzzer_sys::fuzz_target;
use ucrga::{parse_json, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_json(text) {
        assert!(m.is_finite());
        assert_eq!(m.data().len(), m.rows() * m.cols());
        assert_eq!(parse_json(&to_json(&m)).unwrap(), m);
    }
});
