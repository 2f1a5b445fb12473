#![no_main]

use libfuzzer_sys::fuzz_target;
use posetcorr::Poset;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = Poset::parse_text(text) {
        let p = r.poset;
        assert!(p.is_naturally_labeled());
        let again = Poset::parse_text(&p.to_text()).expect("printed text parses");
        assert_eq!(again.poset, p);
    }
});
