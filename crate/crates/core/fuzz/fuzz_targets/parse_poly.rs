#![no_main]

use libfuzzer_sys::fuzz_target;
use posetcorr::{MultiPoly, Vars};

fuzz_target!(|data: &[u8]| {
    let Some((&arity, rest)) = data.split_first() else {
        return;
    };
    let arity = (arity % 8) as usize;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    for vars in [Vars::Q, Vars::Z0] {
        if let Ok(p) = MultiPoly::parse(text, vars, arity) {
            let printed = p.display(vars);
            assert_eq!(MultiPoly::parse(&printed, vars, arity).unwrap(), p);
        }
    }
});
