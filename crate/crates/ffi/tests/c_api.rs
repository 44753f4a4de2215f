use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use zonocube_ffi::*;

fn message() -> String {
    unsafe { CStr::from_ptr(zc_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn cubillage_round_trip() {
    let doc = CString::new(r#"{"n":5,"d":2,"inversions":[[2,3,5],[2,3,4],[1,3,4]]}"#).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { zc_cubillage_from_json(doc.as_ptr(), &mut q) }, ZcStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { zc_cubillage_to_json(q, false, &mut text) }, ZcStatus::Ok);
    let s = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    assert_eq!(s, r#"{"n":5,"d":2,"inversions":[[1,3,4],[2,3,4],[2,3,5]]}"#);
    let (mut sym, mut skew) = (false, true);
    assert_eq!(unsafe { zc_cubillage_symmetry(q, &mut sym, &mut skew) }, ZcStatus::Ok);
    assert!(sym && !skew);
    unsafe {
        zc_string_free(text);
        zc_cubillage_free(q);
    }
}

#[test]
fn invalid_documents_report_position() {
    let doc = CString::new("{\"n\":5,\n\"d\":}").unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { zc_cubillage_from_json(doc.as_ptr(), &mut q) }, ZcStatus::InvalidInput);
    assert!(q.is_null());
    assert!(message().contains("line 2"), "{}", message());
}

#[test]
fn core_and_preconditions() {
    let mut st = ptr::null_mut();
    assert_eq!(unsafe { zc_cubillage_new(6, 2, false, &mut st) }, ZcStatus::Ok);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { zc_core(st, &mut c) }, ZcStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { zc_cubillage_to_json(c, false, &mut text) }, ZcStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(text) }.to_str().unwrap(), r#"{"n":3,"d":1,"inversions":[]}"#);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { zc_reduce_middle(st, &mut r) }, ZcStatus::Precondition);
    assert!(r.is_null());
    unsafe {
        zc_string_free(text);
        zc_cubillage_free(c);
        zc_cubillage_free(st);
    }
}

#[test]
fn counts_and_budget() {
    let mut count = 0;
    assert_eq!(unsafe { zc_enumerate_count(5, 2, ZcClass::All, 0, &mut count) }, ZcStatus::Ok);
    assert_eq!(count, 62);
    assert_eq!(unsafe { zc_enumerate_count(7, 2, ZcClass::All, 5, &mut count) }, ZcStatus::BudgetExceeded);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { zc_digraph_build(4, 2, ZcClass::Skew, 0, &mut g) }, ZcStatus::Precondition);
}

#[test]
fn digraph_json_matches_library() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { zc_digraph_build(4, 1, ZcClass::Symmetric, 0, &mut g) }, ZcStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { zc_digraph_to_json(g, &mut text) }, ZcStatus::Ok);
    let got = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    let lib = zonocube::digraph::class_digraph(4, 1, zonocube::Class::Symmetric, zonocube::Budget::default()).unwrap();
    assert_eq!(got, zonocube::io::emit_digraph(&lib, zonocube::Class::Symmetric));
    unsafe {
        zc_string_free(text);
        zc_digraph_free(g);
    }
}

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/c_api-xxxx -> target/<profile>/libzonocube_ffi.a
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libzonocube_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_against_the_header() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping C link test");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status();
    let Ok(status) = status else {
        eprintln!("no C compiler; skipping C link test");
        return;
    };
    assert!(status.success(), "C smoke program failed to build");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
