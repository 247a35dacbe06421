#![no_main]

use libfuzzer_sys::fuzz_target;

use huygens_cli::config::{parse_config, parse_entries};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(entries) = parse_entries(text) {
        for e in &entries {
            assert_eq!(e.key, e.key.to_ascii_lowercase());
            assert!(!e.value.is_empty());
        }
    }
    if let Ok(cfg) = parse_config(text) {
        assert!(cfg.delta > 0.0 && cfg.tol > 0.0);
        assert!(!cfg.grid.values().is_empty());
    }
});
