#![no_main]

use libfuzzer_sys::fuzz_target;
use macmahon::partitions::YoungDiagram;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(d) = s.parse::<YoungDiagram>() {
        let again: YoungDiagram = d.to_string().parse().expect("display output parses");
        assert_eq!(again, d);
        if d.weight() <= 100_000 {
            assert_eq!(d.conjugate().conjugate(), d);
        }
    }
});
