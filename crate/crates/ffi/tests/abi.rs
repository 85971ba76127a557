use qweil_ffi::*;
use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

fn load(name: &str) -> *mut QweilContext {
    let name = CString::new(name).unwrap();
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { qweil_context_load(name.as_ptr(), &mut ctx) }, QweilStatus::Ok);
    assert!(!ctx.is_null());
    ctx
}

fn last_error() -> String {
    let p = qweil_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { qweil_string_free(s) };
    out
}

#[test]
fn sumu2_dimensions_through_handles() {
    let ctx = load("sumu2-4d");
    let mut n = 0;
    assert_eq!(unsafe { qweil_context_dim(ctx, &mut n) }, QweilStatus::Ok);
    assert_eq!(n, 4);
    let mut dims = [0usize; 8];
    let mut len = 0;
    assert_eq!(unsafe { qweil_exterior_dims(ctx, 4, dims.as_mut_ptr(), dims.len(), &mut len) }, QweilStatus::Ok);
    assert_eq!(&dims[..len], &[1, 4, 6, 4, 1]);
    let status = unsafe { qweil_group_cohomology(ctx, 3, QweilKind::Vee, dims.as_mut_ptr(), dims.len(), &mut len) };
    assert_eq!(status, QweilStatus::Ok);
    assert_eq!(&dims[..len], &[1, 1, 0, 1]);
    unsafe { qweil_context_free(ctx) };
}

#[test]
fn short_buffer_reports_required_length() {
    let ctx = load("sumu2-4d");
    let mut dims = [0usize; 2];
    let mut len = 0;
    let status = unsafe { qweil_exterior_dims(ctx, 4, dims.as_mut_ptr(), dims.len(), &mut len) };
    assert_eq!(status, QweilStatus::BufferTooSmall);
    assert_eq!(len, 5);
    let status = unsafe { qweil_exterior_dims(ctx, 9, dims.as_mut_ptr(), dims.len(), &mut len) };
    assert_eq!(status, QweilStatus::Compute);
    assert!(last_error().contains("degree bound"));
    unsafe { qweil_context_free(ctx) };
}

#[test]
fn validation_report_is_returned() {
    let ctx = load("u1");
    let mut passed = false;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { qweil_validate(ctx, 3, &mut passed, &mut report) }, QweilStatus::Ok);
    assert!(passed);
    assert!(take(report).contains("ok   delta"));
    unsafe { qweil_context_free(ctx) };
}

#[test]
fn error_codes() {
    let mut ctx = ptr::null_mut();
    let missing = CString::new("no-such-preset").unwrap();
    assert_eq!(unsafe { qweil_context_load(missing.as_ptr(), &mut ctx) }, QweilStatus::NotFound);
    assert!(ctx.is_null());
    assert!(last_error().contains("no-such-preset"));
    assert_eq!(unsafe { qweil_context_load(ptr::null(), &mut ctx) }, QweilStatus::NullArgument);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { qweil_context_load(bad.as_ptr().cast(), &mut ctx) }, QweilStatus::InvalidUtf8);
    let mut n = 0;
    assert_eq!(unsafe { qweil_context_dim(ptr::null(), &mut n) }, QweilStatus::NullArgument);

    let name = CString::new("broken").unwrap();
    let text = CString::new(qweil::presets::U1.replace("counit u = 1", "counit u = 2")).unwrap();
    assert_eq!(unsafe { qweil_context_load_text(name.as_ptr(), text.as_ptr(), &mut ctx) }, QweilStatus::Validation);
    assert!(ctx.is_null());
    let text = CString::new(qweil::presets::U1).unwrap();
    assert_eq!(unsafe { qweil_context_load_text(name.as_ptr(), text.as_ptr(), &mut ctx) }, QweilStatus::Ok);
    unsafe { qweil_context_free(ctx) };
    unsafe { qweil_context_free(ptr::null_mut()) };
}

#[test]
fn run_matches_the_binary_protocol() {
    let args: Vec<CString> = ["qweil", "euler-action", "--k", "1", "--n", "-1", "--order", "1"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let argv: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut code, mut out, mut err) = (-1, ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { qweil_run(argv.len(), argv.as_ptr(), &mut code, &mut out, &mut err) }, QweilStatus::Ok);
    assert_eq!(code, 0);
    assert_eq!(take(out), "e^1: 1/lambda\ne^2: (-lambda+1)/(lambda^2*nu)\n");
    assert_eq!(take(err), "");

    let args = [CString::new("qweil").unwrap(), CString::new("frobnicate").unwrap()];
    let argv: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { qweil_run(2, argv.as_ptr(), &mut code, ptr::null_mut(), &mut err) }, QweilStatus::Ok);
    assert_eq!(code, 2);
    assert!(take(err).contains("frobnicate"));
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(qweil_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libqweil_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler on PATH; skipping");
        return;
    }
    let dir = std::env::temp_dir().join(format!("qweil-ffi-c-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bin = dir.join("probe");
    let status = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/probe.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).env_remove("QWEIL_PRESET_DIR").output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(text, "dim 1\nvee 1,1,0,0\nmissing 3 preset not found: nope\n");
}
