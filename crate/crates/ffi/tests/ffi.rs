use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gt_hypergeo_ffi::*;

fn last_error() -> String {
    let p = gtho_last_error_message();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn eval_matches_the_rust_api() {
    let lambda = [1.0, 0.0];
    let s = [0.6, -0.4];
    let mut out = GthoEvalResult::default();
    let status = unsafe { gtho_eval(GthoFunction::HeckmanOpdam, lambda.as_ptr(), s.as_ptr(), 2, 1.0, 24, 1, &mut out) };
    assert_eq!(status, GthoStatus::Ok);
    let direct = gt_hypergeo::hypergeo::ho_f(&lambda, &s, 1.0, Default::default()).unwrap();
    assert_eq!(out.value, direct.value);
    assert_eq!(out.work, direct.work);

    let mut hc = 0.0;
    let status = unsafe { gtho_harish_chandra(lambda.as_ptr(), s.as_ptr(), 2, &mut hc) };
    assert_eq!(status, GthoStatus::Ok);
    let mut phi = GthoEvalResult::default();
    unsafe { gtho_eval(GthoFunction::PhiRational, lambda.as_ptr(), s.as_ptr(), 2, 1.0, 24, 1, &mut phi) };
    assert!((phi.value - hc).abs() < 1e-10 * hc.abs());
}

#[test]
fn error_codes_and_messages() {
    let lambda = [1.0, 1.0];
    let s = [0.0, 0.0];
    let mut out = GthoEvalResult::default();
    gtho_clear_last_error();
    assert!(gtho_last_error_message().is_null());
    let status = unsafe { gtho_eval(GthoFunction::Bessel, lambda.as_ptr(), s.as_ptr(), 2, 1.0, 24, 1, &mut out) };
    assert_eq!(status, GthoStatus::Degenerate);
    assert!(!last_error().is_empty());

    let status = unsafe { gtho_eval(GthoFunction::Bessel, ptr::null(), s.as_ptr(), 2, 1.0, 24, 1, &mut out) };
    assert_eq!(status, GthoStatus::NullPointer);
    assert!(last_error().contains("lambda"));

    let good = [1.0, 0.0];
    let status = unsafe { gtho_eval(GthoFunction::Bessel, good.as_ptr(), s.as_ptr(), 2, 1.0, 2, 1, &mut out) };
    assert_eq!(status, GthoStatus::InvalidArgument);

    let status = unsafe { gtho_eval(GthoFunction::Bessel, good.as_ptr(), s.as_ptr(), 2, 1.0, 24, 1, ptr::null_mut()) };
    assert_eq!(status, GthoStatus::NullPointer);

    let status = unsafe { gtho_orbit_mc(good.as_ptr(), s.as_ptr(), 2, 1, false, 0, 7, &mut out) };
    assert_eq!(status, GthoStatus::InvalidArgument);
}

#[test]
fn errors_are_thread_local() {
    let lambda = [1.0, 1.0];
    let s = [0.0, 0.0];
    let mut out = GthoEvalResult::default();
    unsafe { gtho_eval(GthoFunction::Bessel, lambda.as_ptr(), s.as_ptr(), 2, 1.0, 24, 1, &mut out) };
    std::thread::spawn(|| assert!(gtho_last_error_message().is_null())).join().unwrap();
}

#[test]
fn unitary_handle_lifecycle() {
    let mu = [0.3, -0.8];
    let lambda = [1.0, 0.0, -1.5];
    let mut handle = ptr::null_mut();
    assert_eq!(unsafe { gtho_unitary_new(mu.as_ptr(), lambda.as_ptr(), 3, false, &mut handle) }, GthoStatus::Ok);
    assert!(!handle.is_null());

    let mut n = 0usize;
    assert_eq!(unsafe { gtho_unitary_size(handle, &mut n) }, GthoStatus::Ok);
    assert_eq!(n, 3);

    let mut small = [0.0; 4];
    assert_eq!(unsafe { gtho_unitary_entries(handle, small.as_mut_ptr(), small.len()) }, GthoStatus::BufferTooSmall);
    let mut entries = [0.0; 9];
    assert_eq!(unsafe { gtho_unitary_entries(handle, entries.as_mut_ptr(), entries.len()) }, GthoStatus::Ok);
    // Rows are orthonormal.
    for i in 0..3 {
        for j in 0..3 {
            let dot: f64 = (0..3).map(|c| entries[3 * i + c] * entries[3 * j + c]).sum();
            assert!((dot - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
    }

    let mut residual = 1.0;
    assert_eq!(unsafe { gtho_unitary_residual(handle, &mut residual) }, GthoStatus::Ok);
    assert!(residual < 1e-12);

    let mut w = 0.0;
    assert_eq!(unsafe { gtho_unitary_matrix_element(handle, 1, &mut w) }, GthoStatus::Ok);
    assert_eq!(w, 1.0);

    unsafe { gtho_unitary_free(handle) };
    unsafe { gtho_unitary_free(ptr::null_mut()) };
}

#[test]
fn unitary_rejects_bad_pairs() {
    let lambda = [1.0, 0.0];
    let mut handle = ptr::null_mut();
    let mu = [2.0];
    assert_eq!(
        unsafe { gtho_unitary_new(mu.as_ptr(), lambda.as_ptr(), 2, false, &mut handle) },
        GthoStatus::Interlacing
    );
    assert!(handle.is_null());
    assert_eq!(
        unsafe { gtho_unitary_new(mu.as_ptr(), lambda.as_ptr(), 0, false, &mut handle) },
        GthoStatus::InvalidArgument
    );
    assert_eq!(unsafe { gtho_unitary_size(ptr::null(), &mut 0) }, GthoStatus::NullPointer);
}

#[test]
fn macdonald_handle_round_trip() {
    let q = CString::new("1/2").unwrap();
    let t = CString::new("1/4").unwrap();
    let partition = [2i32];
    let mut handle = ptr::null_mut();
    let status = unsafe { gtho_macdonald_new(partition.as_ptr(), 1, 2, q.as_ptr(), t.as_ptr(), &mut handle) };
    assert_eq!(status, GthoStatus::Ok);

    let mut terms = 0;
    assert_eq!(unsafe { gtho_macdonald_term_count(handle, &mut terms) }, GthoStatus::Ok);
    assert_eq!(terms, 2);

    let mut monomial = [0i32; 2];
    let mut needed = 0usize;
    let mut tiny = [0 as std::ffi::c_char; 2];
    let status =
        unsafe { gtho_macdonald_term(handle, 1, monomial.as_mut_ptr(), 2, tiny.as_mut_ptr(), tiny.len(), &mut needed) };
    assert_eq!(status, GthoStatus::BufferTooSmall);
    assert_eq!(needed, "25/21".len() + 1);
    let mut text = vec![0 as std::ffi::c_char; needed];
    let status =
        unsafe { gtho_macdonald_term(handle, 1, monomial.as_mut_ptr(), 2, text.as_mut_ptr(), text.len(), &mut needed) };
    assert_eq!(status, GthoStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(text.as_ptr()) }.to_str().unwrap(), "25/21");
    assert_eq!(monomial, [1, 1]);

    let mut c = 0.0;
    assert_eq!(unsafe { gtho_macdonald_coefficient_f64(handle, 1, &mut c) }, GthoStatus::Ok);
    assert!((c - 25.0 / 21.0).abs() < 1e-15);

    // P_(2)(x, y) = x² + y² + (25/21)xy.
    let x = [0.5, -2.0];
    let mut v = 0.0;
    assert_eq!(unsafe { gtho_macdonald_eval(handle, x.as_ptr(), 2, &mut v) }, GthoStatus::Ok);
    assert!((v - (0.25 + 4.0 - 25.0 / 21.0)).abs() < 1e-12);
    assert_eq!(unsafe { gtho_macdonald_eval(handle, x.as_ptr(), 1, &mut v) }, GthoStatus::InvalidArgument);
    assert_eq!(
        unsafe { gtho_macdonald_term(handle, 9, ptr::null_mut(), 0, ptr::null_mut(), 0, ptr::null_mut()) },
        GthoStatus::InvalidArgument
    );

    unsafe { gtho_macdonald_free(handle) };
}

#[test]
fn macdonald_rejects_bad_parameters() {
    let one = CString::new("1").unwrap();
    let bad = CString::new("1/0").unwrap();
    let half = CString::new("1/2").unwrap();
    let partition = [1i32];
    let mut handle = ptr::null_mut();
    let s = unsafe { gtho_macdonald_new(partition.as_ptr(), 1, 2, one.as_ptr(), half.as_ptr(), &mut handle) };
    assert_eq!(s, GthoStatus::InvalidArgument);
    let s = unsafe { gtho_macdonald_new(partition.as_ptr(), 1, 2, bad.as_ptr(), half.as_ptr(), &mut handle) };
    assert_eq!(s, GthoStatus::InvalidArgument);
    let s = unsafe { gtho_macdonald_new(partition.as_ptr(), 1, 2, ptr::null(), half.as_ptr(), &mut handle) };
    assert_eq!(s, GthoStatus::NullPointer);
    assert!(handle.is_null());
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(gtho_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(manifest_dir().join("include/gt_hypergeo.h")).unwrap();
    for name in [
        "gtho_last_error_message",
        "gtho_eval",
        "gtho_harish_chandra",
        "gtho_orbit_mc",
        "gtho_unitary_new",
        "gtho_unitary_free",
        "gtho_macdonald_new",
        "gtho_macdonald_term",
        "gtho_macdonald_free",
        "GTHO_STATUS_BUFFER_TOO_SMALL",
        "typedef struct GthoUnitary GthoUnitary",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles and runs `tests/c/smoke.c` against the static library, when a
/// C compiler is available.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libgt_hypergeo_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("gtho_smoke_{}", std::process::id()));
    let status = Command::new(cc)
        .arg(manifest_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let output = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    assert_eq!(String::from_utf8_lossy(&output.stdout).trim(), "ok");
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
