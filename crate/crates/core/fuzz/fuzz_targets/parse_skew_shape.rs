#![no_main]

use libfuzzer_sys::fuzz_target;
use posetcorr::SkewShape;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = text.parse::<SkewShape>() {
        assert_eq!(s.to_string().parse::<SkewShape>().unwrap(), s);
        assert!(s.inner().is_subshape_of(s.outer()));
        let _ = (s.join(&s), s.meet(&s), s.size());
    }
});
