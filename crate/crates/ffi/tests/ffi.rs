use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use orbitlift_ffi::*;

const SP2: &str = r#"{"epsilon": -1, "rows": [{"t": 2, "mult": 1, "eps": 1, "gram": [["1"]]}]}"#;

fn parse(json: &str) -> (OrbitliftStatus, *mut OrbitliftTableau) {
    let c = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { orbitlift_tableau_from_json(c.as_ptr(), &mut out) };
    (status, out)
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = CStr::from_ptr(s).to_str().unwrap().to_string();
    orbitlift_string_free(s);
    text
}

fn last_error() -> Option<String> {
    let p = orbitlift_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn parse_validate_and_lift() {
    let (status, t) = parse(SP2);
    assert_eq!(status, OrbitliftStatus::Ok);
    unsafe {
        let mut n = 0;
        assert_eq!(orbitlift_tableau_size(t, &mut n), OrbitliftStatus::Ok);
        assert_eq!(n, 2);

        let mut report = ptr::null_mut();
        assert_eq!(orbitlift_tableau_validate(t, &mut report), OrbitliftStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v["status"], "pass");

        let mut lifted = ptr::null_mut();
        assert_eq!(orbitlift_tableau_lift(t, 3, &mut lifted), OrbitliftStatus::Ok);
        assert_eq!(orbitlift_tableau_size(lifted, &mut n), OrbitliftStatus::Ok);
        assert_eq!(n, 3);
        let mut json = ptr::null_mut();
        assert_eq!(orbitlift_tableau_to_json(lifted, &mut json), OrbitliftStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["epsilon"], 1);

        orbitlift_tableau_free(lifted);
        orbitlift_tableau_free(t);
    }
}

#[test]
fn errors_are_reported_by_status_and_message() {
    let (status, t) = parse("{not json");
    assert_eq!(status, OrbitliftStatus::InvalidInput);
    assert!(t.is_null());
    assert!(last_error().is_some());

    let mut out = ptr::null_mut();
    let status = unsafe { orbitlift_tableau_from_json(ptr::null(), &mut out) };
    assert_eq!(status, OrbitliftStatus::NullPointer);

    let (_, t) = parse(SP2);
    unsafe {
        let mut lifted = ptr::null_mut();
        assert_eq!(orbitlift_tableau_lift(t, 2, &mut lifted), OrbitliftStatus::InvalidInput);
        assert!(lifted.is_null());
        assert!(last_error().unwrap().contains("size"));
        let mut n = 0;
        assert_eq!(orbitlift_tableau_size(t, &mut n), OrbitliftStatus::Ok);
        assert!(last_error().is_none(), "successful calls clear the error");
        orbitlift_tableau_free(t);
        orbitlift_tableau_free(ptr::null_mut());
        orbitlift_string_free(ptr::null_mut());
    }
}

#[test]
fn inadmissible_tableau_fails_validation() {
    let (status, t) = parse(r#"{"epsilon": 1, "rows": [{"t": 2, "mult": 1, "eps": 1, "gram": [["1"]]}]}"#);
    assert_eq!(status, OrbitliftStatus::Ok);
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(orbitlift_tableau_validate(t, &mut report), OrbitliftStatus::CheckFailed);
        assert!(take(report).contains("\"fail\""));
        orbitlift_tableau_free(t);
    }
}

#[test]
fn verify_all_small_corpus() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(orbitlift_verify_all(5, 20, 3, &mut a), OrbitliftStatus::Ok);
        assert_eq!(orbitlift_verify_all(5, 20, 3, &mut b), OrbitliftStatus::Ok);
        let (a, b) = (take(a), take(b));
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }
}

#[test]
fn header_declares_the_api_and_compiles() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/orbitlift.h")).unwrap();
    for name in [
        "orbitlift_tableau_from_json",
        "orbitlift_tableau_free",
        "orbitlift_tableau_validate",
        "orbitlift_tableau_lift",
        "orbitlift_verify_all",
        "orbitlift_last_error",
        "orbitlift_string_free",
        "ORBITLIFT_STATUS_CHECK_FAILED",
        "typedef struct OrbitliftTableau OrbitliftTableau",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"orbitlift.h\"\nint main(void) { OrbitliftTableau *t = 0; \
         OrbitliftStatus s = orbitlift_tableau_from_json(\"{}\", &t); \
         return s == ORBITLIFT_STATUS_OK; }\n",
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let Ok(status) = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler ({cc}); skipping the compile step");
        return;
    };
    assert!(status.success(), "header does not compile as C99");
}
