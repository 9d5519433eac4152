#![no_main]

use libfuzzer_sys::fuzz_target;
use noma_esg::harness::ExperimentConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = ExperimentConfig::from_toml_str(text) {
        // Anything accepted must survive a write/read cycle.
        ExperimentConfig::from_toml_str(&cfg.to_toml_string()).expect("re-parse");
    }
});
