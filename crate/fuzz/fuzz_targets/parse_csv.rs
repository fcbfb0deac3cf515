#![no_main]

use libfuzzer_sys::fuzz_target;
use ucrga::{parse_csv, to_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_csv(text) {
        assert!(m.is_finite());
        assert_eq!(m.data().len(), m.rows() * m.cols());
        // Anything accepted must survive a write/read cycle unchanged.
        assert_eq!(parse_csv(&to_csv(&m)).unwrap(), m);
    }
});
