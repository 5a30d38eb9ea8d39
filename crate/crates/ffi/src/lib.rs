//! C interface to `normlat`.
//!
//! Groups are opaque `NlGroup` handles built with `nl_group_from_spec` and
//! released with `nl_group_free`. Every fallible call returns an `NlStatus`;
//! on failure `nl_last_error_message` describes the most recent error on the
//! calling thread. Strings handed out by the library are freed with
//! `nl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use normlat::chartable::character_table;
use normlat::generation::class_generating_number_structural;
use normlat::lattice::enumerate_normal_subgroups;
use normlat::moebius::moebius_recursive;
use normlat::report::analyze;
use normlat::{Error, Group, NormalLattice};

/// Result codes. `NL_STATUS_OK` is zero; the rest mirror the library errors.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    UnknownName = 3,
    InvalidPermutation = 4,
    CapExceeded = 5,
    TrivialGroup = 6,
    NotSemisimple = 7,
    DomainError = 8,
    BudgetExceeded = 9,
    CharacterTableFailed = 10,
    Internal = 11,
    Panic = 12,
}

impl From<&Error> for NlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::UnknownName(_) => NlStatus::UnknownName,
            Error::InvalidPermutation(_) => NlStatus::InvalidPermutation,
            Error::ClosureCapExceeded { .. } | Error::CapExceeded { .. } => NlStatus::CapExceeded,
            Error::TrivialGroup => NlStatus::TrivialGroup,
            Error::NotSemisimple => NlStatus::NotSemisimple,
            Error::DomainError(_) => NlStatus::DomainError,
            Error::BudgetExceeded { .. } => NlStatus::BudgetExceeded,
            Error::PrimeSearchFailed { .. } | Error::KernelNotNormal => NlStatus::CharacterTableFailed,
            _ => NlStatus::Internal,
        }
    }
}

/// A group together with its normal lattice.
pub struct NlGroup {
    spec: String,
    group: Group,
    lattice: NormalLattice,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: NlStatus, msg: &str) -> NlStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), (NlStatus, String)>) -> NlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            NlStatus::Ok
        }
        Ok(Err((status, msg))) => fail(status, &msg),
        Err(_) => fail(NlStatus::Panic, "panic inside normlat"),
    }
}

fn lib_err(e: Error) -> (NlStatus, String) {
    (NlStatus::from(&e), e.to_string())
}

fn null(what: &str) -> (NlStatus, String) {
    (NlStatus::NullArgument, format!("{what} is null"))
}

unsafe fn handle<'a>(g: *const NlGroup) -> Result<&'a NlGroup, (NlStatus, String)> {
    g.as_ref().ok_or_else(|| null("group"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Builds a group from a catalog name (`C2^2xS3`, `SL23`, ...) or a
/// `perm:` generator list. `cap` bounds the group order.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nl_group_from_spec(spec: *const c_char, cap: usize, out: *mut *mut NlGroup) -> NlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if spec.is_null() {
            return Err(null("spec"));
        }
        let spec = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| (NlStatus::InvalidUtf8, "spec is not UTF-8".to_string()))?;
        let group = normlat::catalog::group_from_catalog(spec, cap).map_err(lib_err)?;
        let lattice = enumerate_normal_subgroups(&group);
        *out = Box::into_raw(Box::new(NlGroup { spec: spec.to_string(), group, lattice }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must come from `nl_group_from_spec` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nl_group_free(g: *mut NlGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Group order, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nl_group_order(g: *const NlGroup) -> usize {
    g.as_ref().map_or(0, |g| g.group.order())
}

/// Number of conjugacy classes, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nl_group_class_count(g: *const NlGroup) -> usize {
    g.as_ref().map_or(0, |g| g.group.conjugacy_classes().len())
}

/// Number of normal subgroups, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nl_group_normal_subgroup_count(g: *const NlGroup) -> usize {
    g.as_ref().map_or(0, |g| g.lattice.len())
}

/// Least number of conjugacy classes whose union generates the group.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nl_class_generating_number(g: *const NlGroup, out: *mut usize) -> NlStatus {
    guard(|| {
        let g = handle(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = class_generating_number_structural(&g.group, &g.lattice).map_err(lib_err)?;
        Ok(())
    })
}

/// `μ(1, G)` on the normal lattice as a decimal string; free it with
/// `nl_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nl_moebius_one_top(g: *const NlGroup, out: *mut *mut c_char) -> NlStatus {
    guard(|| {
        let g = handle(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let mu = moebius_recursive(&g.lattice);
        let value = mu.get(0, g.lattice.top()).ok_or_else(|| lib_err(Error::NotComparable))?;
        *out = into_c_string(value.to_string());
        Ok(())
    })
}

/// Sum of squared degrees of the faithful irreducible characters.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nl_faithful_degree_square_sum(g: *const NlGroup, cap: usize, out: *mut u64) -> NlStatus {
    guard(|| {
        let g = handle(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = character_table(&g.group, cap).map_err(lib_err)?.faithful_degree_square_sum();
        Ok(())
    })
}

/// Full analysis as pretty-printed JSON; free it with `nl_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nl_analysis_json(g: *const NlGroup, tolerance: f64, verify: bool, out: *mut *mut c_char) -> NlStatus {
    guard(|| {
        let g = handle(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let report = analyze(&g.spec, &g.group, &g.lattice, tolerance, verify).map_err(lib_err)?;
        let text = serde_json::to_string_pretty(&report).map_err(|e| (NlStatus::Internal, e.to_string()))?;
        *out = into_c_string(text);
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread; empty after a success.
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn nl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
