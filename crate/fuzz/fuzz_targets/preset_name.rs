#![no_main]

use libfuzzer_sys::fuzz_target;
use noma_esg::harness::figure_preset;

fuzz_target!(|data: &[u8]| {
    let name = String::from_utf8_lossy(data);
    if let Ok(cfgs) = figure_preset(&name) {
        for cfg in cfgs {
            cfg.validate().expect("presets are valid");
        }
    }
});
