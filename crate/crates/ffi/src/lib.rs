//! C ABI over the qweil engine.
//!
//! Contexts are opaque heap handles released with `qweil_context_free`.
//! Every fallible call returns a `QweilStatus`; on failure the message is
//! kept per thread and read with `qweil_last_error`. Strings handed out by
//! the library are owned by the caller and released with `qweil_string_free`.

use qweil::presets::{self, CalculusKind};
use qweil::{exterior, Context, Error};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QweilStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    NotFound = 3,
    Parse = 4,
    Validation = 5,
    Compute = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Which exterior algebra a query runs on.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QweilKind {
    /// Use the preset's configured kind.
    Preset = 0,
    Wedge = 1,
    Vee = 2,
}

/// Opaque loaded preset.
pub struct QweilContext {
    inner: Context,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> QweilStatus {
    match e {
        Error::PresetNotFound(_) => QweilStatus::NotFound,
        Error::Parse(_) => QweilStatus::Parse,
        Error::Validation(_) => QweilStatus::Validation,
        _ => QweilStatus::Compute,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (QweilStatus, String)>) -> QweilStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QweilStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {msg}"));
            QweilStatus::Panic
        }
    }
}

fn engine(e: Error) -> (QweilStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (QweilStatus, String) {
    (QweilStatus::NullArgument, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (QweilStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (QweilStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn context<'a>(ctx: *const QweilContext) -> Result<&'a Context, (QweilStatus, String)> {
    ctx.as_ref().map(|c| &c.inner).ok_or_else(|| null("context"))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

unsafe fn write_dims(dims: &[usize], out: *mut usize, cap: usize, len: *mut usize) -> Result<(), (QweilStatus, String)> {
    if len.is_null() {
        return Err(null("len"));
    }
    *len = dims.len();
    if cap < dims.len() {
        return Err((QweilStatus::BufferTooSmall, format!("need {} slots, got {cap}", dims.len())));
    }
    if out.is_null() {
        return Err(null("out"));
    }
    ptr::copy_nonoverlapping(dims.as_ptr(), out, dims.len());
    Ok(())
}

fn bounded(ctx: &Context, degree: usize) -> Result<(), (QweilStatus, String)> {
    let bound = ctx.options.degree_bound;
    if degree > bound {
        return Err((QweilStatus::Compute, format!("degree {degree} exceeds the preset degree bound {bound}")));
    }
    Ok(())
}

fn kind(ctx: &Context, k: QweilKind) -> CalculusKind {
    match k {
        QweilKind::Preset => ctx.options.calculus_kind,
        QweilKind::Wedge => CalculusKind::Wedge,
        QweilKind::Vee => CalculusKind::Vee,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qweil_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qweil_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn qweil_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads and validates a preset by built-in name, file path or name under
/// `QWEIL_PRESET_DIR`.
///
/// # Safety
/// `name` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qweil_context_load(name: *const c_char, out: *mut *mut QweilContext) -> QweilStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let ctx = presets::load(read_str(name, "name")?).map_err(engine)?;
        *out = Box::into_raw(Box::new(QweilContext { inner: ctx }));
        Ok(())
    })
}

/// Loads and validates a preset given as text.
///
/// # Safety
/// `name` and `text` must be valid C strings and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qweil_context_load_text(
    name: *const c_char,
    text: *const c_char,
    out: *mut *mut QweilContext,
) -> QweilStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let ctx = presets::load_text(read_str(name, "name")?, read_str(text, "text")?).map_err(engine)?;
        *out = Box::into_raw(Box::new(QweilContext { inner: ctx }));
        Ok(())
    })
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` must come from `qweil_context_load*` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qweil_context_free(ctx: *mut QweilContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Dimension of the first-order calculus.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qweil_context_dim(ctx: *const QweilContext, out: *mut usize) -> QweilStatus {
    guard(|| {
        let c = context(ctx)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = c.dim();
        Ok(())
    })
}

/// Re-runs the preset validators. `passed` receives the overall verdict and
/// `report`, if non-null, a text report to be freed by the caller.
///
/// # Safety
/// `ctx` must be a live context; `passed` writable; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qweil_validate(
    ctx: *const QweilContext,
    seed: u64,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> QweilStatus {
    guard(|| {
        let c = context(ctx)?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let r = presets::validate(c, seed);
        *passed = r.passed();
        if !report.is_null() {
            *report = to_c(r.to_string());
        }
        Ok(())
    })
}

/// Dimensions of Γ^∨ in degrees 0..=max. On `BufferTooSmall`, `len` holds
/// the required size.
///
/// # Safety
/// `ctx` must be live, `out` must hold `cap` slots and `len` be writable.
#[no_mangle]
pub unsafe extern "C" fn qweil_exterior_dims(
    ctx: *const QweilContext,
    max: usize,
    out: *mut usize,
    cap: usize,
    len: *mut usize,
) -> QweilStatus {
    guard(|| {
        let c = context(ctx)?;
        bounded(c, max)?;
        write_dims(&exterior::exterior_dims(&c.calc, max), out, cap, len)
    })
}

/// Dimensions of the left-invariant cohomology in degrees 0..=max.
///
/// # Safety
/// As for `qweil_exterior_dims`.
#[no_mangle]
pub unsafe extern "C" fn qweil_group_cohomology(
    ctx: *const QweilContext,
    max: usize,
    kind: QweilKind,
    out: *mut usize,
    cap: usize,
    len: *mut usize,
) -> QweilStatus {
    guard(|| {
        let c = context(ctx)?;
        bounded(c, max + 1)?;
        let model = exterior::model(&c.calc, self::kind(c, kind), max + 1);
        let h = exterior::group_cohomology(&model).map_err(engine)?;
        write_dims(&h, out, cap, len)
    })
}

/// Runs a command line exactly as the `qweil` binary would. `argv[0]` is the
/// program name. Output strings are written when the pointers are non-null
/// and must be freed by the caller.
///
/// # Safety
/// `argv` must point to `argc` valid C strings; the out pointers are null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qweil_run(
    argc: usize,
    argv: *const *const c_char,
    exit_code: *mut i32,
    out_text: *mut *mut c_char,
    err_text: *mut *mut c_char,
) -> QweilStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        if exit_code.is_null() {
            return Err(null("exit_code"));
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(read_str(*argv.add(i), "argument")?.to_string());
        }
        let (code, out, err) = qweil::cli::run(args);
        *exit_code = code;
        if !out_text.is_null() {
            *out_text = to_c(out);
        }
        if !err_text.is_null() {
            *err_text = to_c(err);
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engine_errors_map_to_codes() {
        assert_eq!(status_of(&Error::PresetNotFound("x".into())), QweilStatus::NotFound);
        assert_eq!(status_of(&Error::Parse("x".into())), QweilStatus::Parse);
        assert_eq!(status_of(&Error::DivisionByZero), QweilStatus::Compute);
    }

    #[test]
    fn panics_become_status_codes() {
        assert_eq!(guard(|| panic!("boom")), QweilStatus::Panic);
        let msg = unsafe { CStr::from_ptr(qweil_last_error()) }.to_str().unwrap().to_string();
        assert_eq!(msg, "internal panic: boom");
    }

    #[test]
    fn nul_bytes_are_replaced() {
        let s = to_c("a\0b".to_string());
        assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "a b");
        unsafe { qweil_string_free(s) };
    }
}
