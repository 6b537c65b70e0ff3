use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use recamp_ffi::*;

const INSTANCE: &str = r#"{
  "format": "recamp/1",
  "rule": {"family": "t-approval", "t": 1},
  "districts": [
    {"candidates": ["b"], "votes": [["x", "b"], ["x", "b"]]},
    {"candidates": [], "votes": []}
  ],
  "additional": ["x"],
  "bound": {"atMost": 1},
  "pricing": {"prices": [[1, "x", 4], [2, "x", 7]], "budget": 10}
}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { recamp_string_free(s) };
    text
}

fn last_error() -> Option<String> {
    let p = recamp_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn load(json: &str) -> *mut RecampInstance {
    let json = c(json);
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { recamp_instance_from_json(json.as_ptr(), &mut inst) },
        RecampStatus::Ok
    );
    inst
}

#[test]
fn solve_round_trip() {
    let inst = load(INSTANCE);
    unsafe {
        assert_eq!(recamp_instance_district_count(inst), 2);
        assert_eq!(recamp_instance_additional_count(inst), 1);

        let mut res = ptr::null_mut();
        assert_eq!(
            recamp_solve(inst, RecampAlgorithm::Auto, 0, &mut res),
            RecampStatus::Ok
        );
        assert!(recamp_result_is_yes(res));
        let mut cost = 0;
        assert!(recamp_result_cost(res, &mut cost));
        assert_eq!(cost, 4);
        let mut report = ptr::null_mut();
        assert_eq!(recamp_result_to_json(res, &mut report), RecampStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(report["answer"], "YES");
        assert_eq!(report["algorithm"], "crc1-matching");
        assert_eq!(report["assignment"]["placement"]["x"], 1);
        recamp_result_free(res);

        let mut text = ptr::null_mut();
        assert_eq!(recamp_instance_to_json(inst, &mut text), RecampStatus::Ok);
        let again = load(&take(text));
        assert_eq!(recamp_instance_district_count(again), 2);
        recamp_instance_free(again);
        recamp_instance_free(inst);
    }
}

#[test]
fn no_answer_is_not_an_error() {
    let inst = load(&INSTANCE.replace(r#""budget": 10"#, r#""budget": 3"#));
    unsafe {
        let mut res = ptr::null_mut();
        assert_eq!(
            recamp_solve(inst, RecampAlgorithm::Brute, 0, &mut res),
            RecampStatus::Ok
        );
        assert!(!recamp_result_is_yes(res));
        let mut cost = 99;
        assert!(!recamp_result_cost(res, &mut cost));
        assert_eq!(cost, 99);
        assert!(last_error().is_none());
        recamp_result_free(res);
        recamp_instance_free(inst);
    }
}

#[test]
fn verify_assignments() {
    let inst = load(&INSTANCE.replace(r#""budget": 10"#, r#""budget": 5"#));
    let good = c(r#"{"placement": {"x": 1}}"#);
    let over = c(r#"{"placement": {"x": 2}}"#);
    let unknown = c(r#"{"placement": {"y": 1}}"#);
    let mut valid = false;
    unsafe {
        assert_eq!(
            recamp_verify_json(inst, good.as_ptr(), &mut valid),
            RecampStatus::Ok
        );
        assert!(valid);
        assert_eq!(
            recamp_verify_json(inst, over.as_ptr(), &mut valid),
            RecampStatus::Ok
        );
        assert!(!valid);
        assert_eq!(
            recamp_verify_json(inst, unknown.as_ptr(), &mut valid),
            RecampStatus::Invalid
        );
        assert!(last_error().unwrap().contains('y'));
        recamp_instance_free(inst);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(
            recamp_instance_from_json(ptr::null(), &mut inst),
            RecampStatus::NullPointer
        );
        assert!(inst.is_null());
        let json = c(INSTANCE);
        assert_eq!(
            recamp_instance_from_json(json.as_ptr(), ptr::null_mut()),
            RecampStatus::NullPointer
        );

        let bad = c("{");
        assert_eq!(
            recamp_instance_from_json(bad.as_ptr(), &mut inst),
            RecampStatus::Parse
        );
        assert!(last_error().unwrap().contains("JSON"));

        let bytes = [0xffu8, 0];
        assert_eq!(
            recamp_instance_from_json(bytes.as_ptr().cast(), &mut inst),
            RecampStatus::InvalidUtf8
        );

        let inst = load(INSTANCE);
        let mut res = ptr::null_mut();
        assert_eq!(
            recamp_solve(inst, RecampAlgorithm::E1, 0, &mut res),
            RecampStatus::WrongVariant
        );
        assert!(res.is_null());
        assert!(last_error().is_some());
        recamp_instance_free(inst);

        let wide = load(
            r#"{"format": "recamp/1", "rule": {"family": "borda"},
                "districts": [{"candidates": [], "votes": []}, {"candidates": [], "votes": []}],
                "additional": ["p", "q", "r", "s", "t", "u"], "bound": "unbounded"}"#,
        );
        assert_eq!(
            recamp_solve(wide, RecampAlgorithm::Brute, 10, &mut res),
            RecampStatus::Resource
        );
        recamp_instance_free(wide);

        assert!(!recamp_result_is_yes(ptr::null()));
        assert_eq!(recamp_instance_district_count(ptr::null()), 0);
        recamp_instance_free(ptr::null_mut());
        recamp_result_free(ptr::null_mut());
        recamp_string_free(ptr::null_mut());
    }
}

#[test]
fn winners_as_json() {
    let election =
        c(r#"{"candidates": ["a", "b", "c"], "votes": [["a", "b", "c"], ["b", "a", "c"]]}"#);
    let rule = c("borda");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            recamp_winners_json(election.as_ptr(), rule.as_ptr(), &mut out),
            RecampStatus::Ok
        );
        assert_eq!(take(out), r#"["a","b"]"#);
        let rule = c("plurality");
        assert_eq!(
            recamp_winners_json(election.as_ptr(), rule.as_ptr(), &mut out),
            RecampStatus::Parse
        );
    }
}

#[test]
fn header_declares_the_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/recamp.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "typedef struct RecampInstance RecampInstance;",
        "typedef struct RecampResult RecampResult;",
        "RECAMP_STATUS_RESOURCE = 6",
        "RECAMP_ALGORITHM_BRUTE = 6",
        "recamp_instance_from_json",
        "recamp_solve",
        "recamp_result_cost",
        "recamp_verify_json",
        "recamp_winners_json",
        "recamp_last_error_message",
        "recamp_string_free",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }

    // Compile the header as C when a compiler is available.
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-xc", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        return;
    };
    assert!(status.success(), "header does not compile");
}
