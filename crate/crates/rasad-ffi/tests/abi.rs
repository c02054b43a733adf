//! Exercises the C ABI the way a foreign caller would: raw pointers,
//! NUL-terminated strings, status codes.

use rasad_ffi::*;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn stem_owned(word: &str) -> String {
    let word = cstr(word);
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { rasad_stem(word.as_ptr(), &mut out) };
    assert_eq!(status, RasadStatus::Ok);
    let result = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { rasad_string_free(out) };
    result
}

#[test]
fn version_is_a_static_string() {
    let v = unsafe { CStr::from_ptr(rasad_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn stem_round_trips_through_c_strings() {
    unsafe {
        assert_eq!(stem_owned("المسلمين"), "سلم");
        assert_eq!(stem_owned("قتل"), "قتل");
        assert_eq!(stem_owned("دولة_الإسلامية"), "دولة_الاسلامية");
    }
}

#[test]
fn stem_rejects_null_and_invalid_utf8() {
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { rasad_stem(ptr::null(), &mut out) };
    assert_eq!(status, RasadStatus::NullPointer);
    let msg = unsafe { CStr::from_ptr(rasad_last_error()) }
        .to_str()
        .unwrap();
    assert!(msg.contains("null"));

    let bogus = CString::new(vec![0xFFu8, 0xFE]).unwrap();
    let status = unsafe { rasad_stem(bogus.as_ptr(), &mut out) };
    assert_eq!(status, RasadStatus::InvalidUtf8);

    let word = cstr("قتل");
    let status = unsafe { rasad_stem(word.as_ptr(), ptr::null_mut()) };
    assert_eq!(status, RasadStatus::NullPointer);
}

#[test]
fn engine_lifecycle_and_stop_words() {
    let engine = rasad_engine_new();
    assert!(!engine.is_null());
    unsafe {
        assert_eq!(rasad_is_stop(engine, cstr("في").as_ptr()), 1);
        assert_eq!(rasad_is_stop(engine, cstr("قتل").as_ptr()), 0);
        assert_eq!(rasad_is_stop(ptr::null(), cstr("في").as_ptr()), -1);
        assert_eq!(rasad_is_stop(engine, ptr::null()), -1);
        rasad_engine_free(engine);
        rasad_engine_free(ptr::null_mut());
    }
}

#[test]
fn classify_writes_counts_label_and_second_pass() {
    let engine = rasad_engine_new();
    let text = cstr("قتل قتل دين");
    let mut counts = [0u32; 4];
    let mut label = RasadLabel::None;
    let mut second_pass: c_int = -2;
    let status = unsafe {
        rasad_classify(
            engine,
            text.as_ptr(),
            counts.as_mut_ptr(),
            &mut label,
            &mut second_pass,
        )
    };
    assert_eq!(status, RasadStatus::Ok);
    assert_eq!(counts, [2, 1, 0, 0]);
    assert_eq!(label, RasadLabel::Violence);
    assert_eq!(second_pass, RASAD_SECOND_PASS_NONE);
    unsafe { rasad_engine_free(engine) };

    // tie between Violence and Theological with a Names compound in text
    let text = cstr("قتل دين دولة_الإسلامية");
    let mut counts = [0u32; 4];
    let mut label = RasadLabel::None;
    let mut second_pass: c_int = -2;
    let status = unsafe {
        rasad_classify_builtin(
            text.as_ptr(),
            counts.as_mut_ptr(),
            &mut label,
            &mut second_pass,
        )
    };
    assert_eq!(status, RasadStatus::Ok);
    assert_eq!(counts, [1, 1, 0, 1]);
    assert_eq!(label, RasadLabel::Other);
    assert_eq!(second_pass, 3, "residual tie lands in Names+Other");
}

#[test]
fn engine_from_file_loads_and_reports_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("lex.json");
    std::fs::write(
        &good,
        r#"{
  "version": "abi-1",
  "categories": {
    "Violence": [{"stem": "قتل", "match_mode": "exact_stem"}],
    "Theological": [],
    "Sectarian": [],
    "Names": []
  },
  "stop_words": []
}"#,
    )
    .unwrap();

    let path = cstr(good.to_str().unwrap());
    let mut engine: *mut RasadEngine = ptr::null_mut();
    let status = unsafe { rasad_engine_from_file(path.as_ptr(), &mut engine) };
    assert_eq!(status, RasadStatus::Ok);
    assert!(!engine.is_null());
    unsafe {
        assert_eq!(rasad_is_stop(engine, cstr("في").as_ptr()), 0);
        rasad_engine_free(engine);
    }

    let missing = cstr(dir.path().join("absent.json").to_str().unwrap());
    let mut engine: *mut RasadEngine = ptr::null_mut();
    let status = unsafe { rasad_engine_from_file(missing.as_ptr(), &mut engine) };
    assert_eq!(status, RasadStatus::LexiconError);
    assert!(engine.is_null());
    let msg = unsafe { CStr::from_ptr(rasad_last_error()) }
        .to_str()
        .unwrap();
    assert!(!msg.is_empty());
}

#[test]
fn generated_header_exports_the_surface() {
    let header = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/rasad.h"),
    )
    .expect("header generated at build time");
    for symbol in [
        "rasad_engine_new",
        "rasad_engine_from_file",
        "rasad_engine_free",
        "rasad_stem",
        "rasad_is_stop",
        "rasad_classify",
        "rasad_string_free",
        "rasad_version",
        "rasad_last_error",
        "RasadStatus",
        "RasadLabel",
        "RasadEngine",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}
