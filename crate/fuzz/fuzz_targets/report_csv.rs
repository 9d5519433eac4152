#![no_main]

use libfuzzer_sys::fuzz_target;
use noma_esg::harness::{parse_csv, write_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(rows) = parse_csv(data) else {
        return;
    };
    let mut first = Vec::new();
    write_csv(&rows, &mut first).expect("write");
    let again = parse_csv(first.as_slice()).expect("re-parse");
    let mut second = Vec::new();
    write_csv(&again, &mut second).expect("write");
    assert_eq!(first, second);
});
