#![no_main]

use libfuzzer_sys::fuzz_target;
use macmahon::partitions::DiagramTuple;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = s.parse::<DiagramTuple>() {
        let again: DiagramTuple = t.to_string().parse().expect("display output parses");
        assert_eq!(again, t);
        let width = t
            .diagrams()
            .iter()
            .map(|d| d.row(0) as u64)
            .max()
            .unwrap_or(0);
        let height = t
            .diagrams()
            .iter()
            .map(|d| d.len() as u64)
            .max()
            .unwrap_or(0);
        if width * height <= 100_000 {
            let pi = t
                .plane_partition()
                .expect("tuples stack into plane partitions");
            assert_eq!(pi.weight(), t.weight());
        }
    }
});
