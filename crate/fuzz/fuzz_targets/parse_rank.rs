#![no_main]

use libfuzzer_sys::fuzz_target;
use macmahon::motivic::Rank;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = s.parse::<Rank>() {
        assert_eq!(r.to_string().parse::<Rank>().ok(), Some(r));
    }
});
