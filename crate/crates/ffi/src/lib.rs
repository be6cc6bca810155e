//! C ABI.
//!
//! Families and chains cross the boundary as the JSON file formats the
//! command line reads. Every function returns a [`SemitriStatus`]; on failure
//! `semitri_last_error` describes it until the next failing call on the same
//! thread. Strings handed out are owned by the handle they came from.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use semitri::cli::{self, Failure, Options, Report};
use semitri::triangularize::Mode;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemitriStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    ResourceExceeded = 4,
    Panic = 5,
}

/// Same numbering as the command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemitriVerdict {
    /// Triangularizable, verified, or reducible in irreducible mode.
    Positive = 0,
    /// Refuted, rejected, or irreducible in irreducible mode.
    Negative = 1,
    Undetermined = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemitriMode {
    /// Whatever the family file names.
    FromFile = 0,
    Auto,
    Levitzki,
    Kolchin,
    Kaplansky,
    General,
    Tn,
    Irreducible,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SemitriOptions {
    pub mode: SemitriMode,
    /// 0 keeps the file's bound or the default.
    pub closure_bound: usize,
    pub finite: bool,
    /// 0 means the command line default.
    pub max_prime: u64,
    /// Render the report as JSON instead of text.
    pub json: bool,
}

/// A decoded family file.
pub struct SemitriFamily {
    text: String,
    dim: usize,
}

/// The result of `semitri_triangularize` or `semitri_verify`.
pub struct SemitriReport {
    verdict: SemitriVerdict,
    text: CString,
    chain: Option<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: SemitriStatus, message: &str) -> SemitriStatus {
    set_error(message);
    status
}

fn failure(f: Failure) -> SemitriStatus {
    let status =
        if f.exit == cli::EXIT_RESOURCE { SemitriStatus::ResourceExceeded } else { SemitriStatus::InvalidInput };
    fail(status, &f.message)
}

/// Runs `body`, turning a panic into `SemitriStatus::Panic`.
fn guard(body: impl FnOnce() -> SemitriStatus) -> SemitriStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(SemitriStatus::Panic, &format!("panic: {msg}"))
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, SemitriStatus> {
    if p.is_null() {
        return Err(fail(SemitriStatus::NullArgument, &format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| fail(SemitriStatus::InvalidUtf8, &format!("{what}: {e}")))
}

fn into_report(r: Report) -> Box<SemitriReport> {
    let verdict = match r.exit {
        cli::EXIT_TRIANGULARIZABLE => SemitriVerdict::Positive,
        cli::EXIT_REFUTED => SemitriVerdict::Negative,
        _ => SemitriVerdict::Undetermined,
    };
    let c = |s: String| CString::new(s).expect("reports are JSON or plain text without nul bytes");
    Box::new(SemitriReport { verdict, text: c(r.text), chain: r.chain.map(c) })
}

fn mode(m: SemitriMode) -> Option<Mode> {
    match m {
        SemitriMode::FromFile => None,
        SemitriMode::Auto => Some(Mode::Auto),
        SemitriMode::Levitzki => Some(Mode::Levitzki),
        SemitriMode::Kolchin => Some(Mode::Kolchin),
        SemitriMode::Kaplansky => Some(Mode::Kaplansky),
        SemitriMode::General => Some(Mode::General),
        SemitriMode::Tn => Some(Mode::Tn),
        SemitriMode::Irreducible => Some(Mode::Irreducible),
    }
}

/// The message for the last failing call on this thread, or null.
#[no_mangle]
pub extern "C" fn semitri_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Options matching the command line defaults.
#[no_mangle]
pub extern "C" fn semitri_options_default() -> SemitriOptions {
    SemitriOptions { mode: SemitriMode::FromFile, closure_bound: 0, finite: false, max_prime: 0, json: false }
}

/// Parses and decodes a family file.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn semitri_family_from_json(json: *const c_char, out: *mut *mut SemitriFamily) -> SemitriStatus {
    guard(|| {
        if out.is_null() {
            return fail(SemitriStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let text = match read_str(json, "json") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match cli::check_family(text, None) {
            Ok((_, dim)) => {
                *out = Box::into_raw(Box::new(SemitriFamily { text: text.to_owned(), dim }));
                SemitriStatus::Ok
            }
            Err(f) => failure(f),
        }
    })
}

/// Dimension `n` of the family, 0 for a null handle.
///
/// # Safety
/// `family` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn semitri_family_dim(family: *const SemitriFamily) -> usize {
    family.as_ref().map_or(0, |f| f.dim)
}

/// # Safety
/// `family` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn semitri_family_free(family: *mut SemitriFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Runs the engine. `options` may be null for the defaults. A refutation is a
/// successful call whose report has verdict `Negative`.
///
/// # Safety
/// `family` must be a live handle, `options` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn semitri_triangularize(
    family: *const SemitriFamily,
    options: *const SemitriOptions,
    out: *mut *mut SemitriReport,
) -> SemitriStatus {
    guard(|| {
        if out.is_null() {
            return fail(SemitriStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let Some(family) = family.as_ref() else {
            return fail(SemitriStatus::NullArgument, "family is null");
        };
        let o = options.as_ref().copied().unwrap_or(semitri_options_default());
        let opts = Options {
            mode: mode(o.mode),
            closure_bound: (o.closure_bound > 0).then_some(o.closure_bound),
            finite: o.finite,
            max_prime: Some(if o.max_prime == 0 { cli::DEFAULT_MAX_PRIME } else { o.max_prime }),
            json: o.json,
        };
        match cli::triangularize_text(&family.text, &opts) {
            Ok(r) => {
                *out = Box::into_raw(into_report(r));
                SemitriStatus::Ok
            }
            Err(f) => failure(f),
        }
    })
}

/// Checks a chain file against the family.
///
/// # Safety
/// `family` must be a live handle, `chain_json` a nul-terminated string,
/// `out` valid.
#[no_mangle]
pub unsafe extern "C" fn semitri_verify(
    family: *const SemitriFamily,
    chain_json: *const c_char,
    out: *mut *mut SemitriReport,
) -> SemitriStatus {
    guard(|| {
        if out.is_null() {
            return fail(SemitriStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let Some(family) = family.as_ref() else {
            return fail(SemitriStatus::NullArgument, "family is null");
        };
        let chain = match read_str(chain_json, "chain_json") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match cli::verify_text(&family.text, chain) {
            Ok(r) => {
                *out = Box::into_raw(into_report(r));
                SemitriStatus::Ok
            }
            Err(f) => failure(f),
        }
    })
}

/// `Undetermined` for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn semitri_report_verdict(report: *const SemitriReport) -> SemitriVerdict {
    report.as_ref().map_or(SemitriVerdict::Undetermined, |r| r.verdict)
}

/// The rendered report; owned by `report`.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn semitri_report_text(report: *const SemitriReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.text.as_ptr())
}

/// The chain file when a chain was found, else null; owned by `report`.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn semitri_report_chain(report: *const SemitriReport) -> *const c_char {
    report.as_ref().and_then(|r| r.chain.as_ref()).map_or(ptr::null(), |c| c.as_ptr())
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn semitri_report_free(report: *mut SemitriReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
