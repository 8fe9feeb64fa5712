use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use odesign_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(od_last_error_message()) }.to_str().unwrap().to_string()
}

#[test]
fn build_query_free() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { od_square(32, OdFamily::Gp, false, &mut d) }, OdStatus::Ok);
    let (mut p, mut n, mut k) = (0, 0, 0);
    assert_eq!(unsafe { od_design_shape(d, &mut p, &mut n, &mut k) }, OdStatus::Ok);
    assert_eq!((p, n, k), (32, 32, 10));
    let mut ok = false;
    assert_eq!(unsafe { od_verify(d, &mut ok) }, OdStatus::Ok);
    assert!(ok);
    let mut cell = OdCell::default();
    assert_eq!(unsafe { od_design_cell(d, 0, 0, &mut cell) }, OdStatus::Ok);
    assert_eq!(cell, OdCell { sign: 1, var: 0, conj: false, scaled: false });
    assert_eq!(unsafe { od_design_cell(d, 32, 0, &mut cell) }, OdStatus::InvalidArgument);
    unsafe { od_design_free(d) };
}

#[test]
fn every_constructor() {
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(od_rate1(9, OdRate1Variant::WHat, OdFamily::AlpQ, &mut d), OdStatus::Ok);
        od_design_free(d);
        assert_eq!(od_tjc(9, OdFamily::R, &mut d), OdStatus::Ok);
        od_design_free(d);
        assert_eq!(od_rh(12, OdFamily::AlpO, true, &mut d), OdStatus::Ok);
        let mut ok = false;
        od_verify(d, &mut ok);
        assert!(ok);
        od_design_free(d);
        assert_eq!(od_square(64, OdFamily::R, true, &mut d), OdStatus::Ok);
        od_design_free(d);
    }
}

#[test]
fn json_round_trip_matches_core() {
    let golden = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/golden/rh9_zero_free.json"),
    )
    .unwrap();
    let c = CString::new(golden.clone()).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { od_design_from_json(c.as_ptr(), &mut d) }, OdStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { od_design_to_json(d, &mut s) }, OdStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), golden);
    unsafe {
        od_string_free(s);
        od_design_free(d);
    }
}

#[test]
fn error_codes() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { od_rh(4, OdFamily::R, false, &mut d) }, OdStatus::Unsupported);
    assert!(last_error().contains("at least 5"), "{}", last_error());
    assert_eq!(unsafe { od_square(12, OdFamily::R, false, &mut d) }, OdStatus::InvalidArgument);
    assert_eq!(unsafe { od_square(16, OdFamily::R, false, ptr::null_mut()) }, OdStatus::NullPointer);

    let bad = CString::new("{\"schema_version\": 1").unwrap();
    assert_eq!(unsafe { od_design_from_json(bad.as_ptr(), &mut d) }, OdStatus::Parse);
    let wrong = CString::new(
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/golden/w9.json"))
            .unwrap()
            .replacen("\"sign\": 1", "\"sign\": 0", 1),
    )
    .unwrap();
    assert_eq!(unsafe { od_design_from_json(wrong.as_ptr(), &mut d) }, OdStatus::InvalidDesign);
    assert!(last_error().contains("entries[0].sign"), "{}", last_error());

    let mut ok = true;
    assert_eq!(unsafe { od_verify(ptr::null(), &mut ok) }, OdStatus::NullPointer);
    unsafe {
        od_string_free(ptr::null_mut());
        od_design_free(ptr::null_mut());
    }
}

#[test]
fn failed_verification_reports_the_cell() {
    let text = "x0 x1\nx1 x0";
    let design = odesign::DesignMatrix::parse_tokens(text).unwrap();
    let json = odesign::io::DesignDocument::from_design(&design, odesign::io::Construction::Custom, None).to_json();
    let c = CString::new(json).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { od_design_from_json(c.as_ptr(), &mut d) }, OdStatus::Ok);
    let mut ok = true;
    assert_eq!(unsafe { od_verify(d, &mut ok) }, OdStatus::Ok);
    assert!(!ok);
    assert!(last_error().starts_with("FAILED at gram cell (0, 1)"), "{}", last_error());
    unsafe { od_design_free(d) };
}

#[test]
fn scalar_functions() {
    let mut v = 0;
    unsafe {
        assert_eq!(od_rho(32, &mut v), OdStatus::Ok);
        assert_eq!(v, 10);
        assert_eq!(od_nu(10, &mut v), OdStatus::Ok);
        assert_eq!(v, 32);
        assert_eq!(od_hopf_stiefel(18, 12, &mut v), OdStatus::Ok);
        assert_eq!(v, 28);
        assert_eq!(od_rho(0, &mut v), OdStatus::InvalidArgument);
    }
}

fn target_dir() -> PathBuf {
    // tests/…/deps/ffi-<hash> → the profile directory holding the libraries
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/odesign.h")).unwrap();
    for f in [
        "od_square", "od_rate1", "od_rh", "od_tjc", "od_design_from_json", "od_design_to_json",
        "od_string_free", "od_design_free", "od_design_shape", "od_design_cell", "od_verify",
        "od_rho", "od_nu", "od_hopf_stiefel", "od_last_error_message",
    ] {
        let declared = header
            .lines()
            .any(|l| !l.starts_with("//") && l.split([' ', '*']).any(|w| w.starts_with(&format!("{f}("))));
        assert!(declared, "{f} missing from header");
    }
    assert!(header.contains("typedef struct OdDesign OdDesign;"));
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("libodesign_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = tempfile_path("smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is installed");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(run.stdout, b"ok\n");
}

fn tempfile_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("odesign-{name}-{}", std::process::id()))
}
