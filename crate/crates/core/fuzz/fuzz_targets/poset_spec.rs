#![no_main]

use libfuzzer_sys::fuzz_target;
use posetcorr::Poset;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Some(Ok(p)) = Poset::from_builtin(text) {
        assert!(p.len() <= posetcorr::poset::MAX_ELEMENTS);
        assert!(p.is_naturally_labeled());
    }
});
