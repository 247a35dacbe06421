#![no_main]

use libfuzzer_sys::fuzz_target;

use huygens_cli::config::parse_value;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_value(text) {
        assert!(v.is_finite());
    }
});
