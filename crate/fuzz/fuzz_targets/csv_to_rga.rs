#![no_main]
//! Parsed matrices go straight into the UC-RGA. Small inputs only, so the
//! fuzzer spends its time on odd values rather than big SVDs.

use libfuzzer_sys::fuzz_target;
use ucrga::{parse_csv, rga_uc, Tolerances};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(m) = parse_csv(text) else {
        return;
    };
    if m.rows() * m.cols() > 64 {
        return;
    }
    let tol = Tolerances {
        max_iter: 500,
        ..Tolerances::default()
    };
    if let Ok(r) = rga_uc(&m, &tol) {
        assert_eq!(r.rga.shape(), m.shape());
        assert!(r.numerical_rank <= m.rows().min(m.cols()));
    }
});
