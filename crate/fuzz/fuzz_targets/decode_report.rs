#![no_main]

use glrmc_cli::report::{decode_report, verify_report_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Keeps patterns small enough that verification stays cheap.
    if data.len() > 4096 {
        return;
    }
    let Ok(json) = std::str::from_utf8(data) else { return };
    if let Ok(report) = decode_report(json) {
        let again = serde_json_roundtrip(&report);
        assert_eq!(again, report);
    }
    let _ = verify_report_json(json);
});

fn serde_json_roundtrip(r: &glrmc_cli::report::Report) -> glrmc_cli::report::Report {
    let text = glrmc_cli::report::encode_report(r);
    decode_report(&text).expect("encoded report decodes")
}
