#![no_main]

use copositive::format::VerdictReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(report) = VerdictReport::from_json(text) {
            let _ = report.exit_code();
            let _ = VerdictReport::from_json(&report.to_json());
        }
    }
});
