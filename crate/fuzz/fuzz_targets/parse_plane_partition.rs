#![no_main]

use libfuzzer_sys::fuzz_target;
use macmahon::partitions::PlanePartition;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(pi) = s.parse::<PlanePartition>() {
        let again: PlanePartition = pi.to_string().parse().expect("display output parses");
        assert_eq!(again, pi);
        assert_eq!(pi.transpose().weight(), pi.weight());
    }
});
