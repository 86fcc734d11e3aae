//! Golden-file checks: `report` output for every covered diagram must be
//! byte-stable. Runs with a different worker count than the goldens were
//! generated with, so this doubles as a scheduling-determinism check.
//! Timing fields are stripped before comparing; nothing else is.

use std::process::Command;

fn report_json(id: &str) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_qonsager"))
        .args(["report", id, "--workers", "4"])
        .output()
        .expect("binary runs");
    assert_eq!(
        out.status.code(),
        Some(0),
        "report {id} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strip_timings(v: &mut serde_json::Value) {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("elapsedMs");
        for child in obj.values_mut() {
            strip_timings(child);
        }
    } else if let Some(arr) = v.as_array_mut() {
        for child in arr {
            strip_timings(child);
        }
    }
}

fn check(id: &str) {
    let golden_path = format!(
        "{}/tests/goldens/report_{}.json",
        env!("CARGO_MANIFEST_DIR"),
        id.replace('^', "-")
    );
    let raw = std::fs::read_to_string(&golden_path)
        .unwrap_or_else(|e| panic!("missing golden {golden_path}: {e}"));
    let mut golden: serde_json::Value = serde_json::from_str(&raw).expect("golden is JSON");
    let mut fresh = report_json(id);
    strip_timings(&mut golden);
    strip_timings(&mut fresh);
    assert_eq!(fresh, golden, "report {id} drifted from its golden file");
}

macro_rules! golden {
    ($name:ident, $id:literal) => {
        #[test]
        fn $name() {
            check($id);
        }
    };
}

golden!(report_a2_1, "a2^1");
golden!(report_a3_1, "a3^1");
golden!(report_b3_1, "b3^1");
golden!(report_c2_1, "c2^1");
golden!(report_c3_1, "c3^1");
golden!(report_d4_1, "d4^1");
golden!(report_a5_2, "a5^2");
golden!(report_a6_2, "a6^2");
golden!(report_d3_2, "d3^2");
golden!(report_a2_2, "a2^2");
golden!(report_a4_2, "a4^2");
golden!(report_g2_1, "g2^1");
golden!(report_d4_3, "d4^3");
golden!(report_f4_1, "f4^1");
golden!(report_e6_2, "e6^2");
golden!(report_e6_1, "e6^1");
