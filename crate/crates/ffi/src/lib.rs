//! C interface to `axial-core`.
//!
//! Every fallible function returns an [`AxlStatus`]; on failure the message is
//! available from [`axl_last_error`] on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with [`axl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use axial_core::group::GroupModel;
use axial_core::harness::report::build_report;
use axial_core::harness::{audit_axial_pair, verify_lemma, Scenario, Session, Verdict};
use axial_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ConfigError = 3,
    UnknownGenerator = 4,
    RuntimeError = 5,
    UnknownSuite = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxlVerdict {
    Pass = 0,
    Fail = 1,
    Inconclusive = 2,
}

impl From<Verdict> for AxlVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => AxlVerdict::Pass,
            Verdict::Fail => AxlVerdict::Fail,
            Verdict::Inconclusive => AxlVerdict::Inconclusive,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxlFamily {
    Free = 0,
    FreeAbelian = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxlAuditSummary {
    pub axiom1: AxlVerdict,
    pub axiom2: AxlVerdict,
    pub virtually_cyclic: bool,
    /// False when the constants could not be estimated; the fields below are then 0.
    pub constants_known: bool,
    pub constants_stable: bool,
    pub m_hat: i64,
    pub l_hat: i64,
    pub n_hat: i64,
    pub radius: u32,
}

/// Opaque scenario handle.
pub struct AxlScenario {
    scenario: Scenario,
    session: Option<Session>,
}

impl AxlScenario {
    fn session(&mut self) -> axial_core::Result<&Session> {
        if self.session.is_none() {
            self.session = Some(Session::new(self.scenario.clone())?);
        }
        Ok(self.session.as_ref().expect("just set"))
    }
}

/// Opaque group handle.
pub struct AxlGroup {
    model: GroupModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(err: Error) -> AxlStatus {
    let status = match &err {
        Error::UnknownGenerator(_) => AxlStatus::UnknownGenerator,
        Error::UnknownSuite(_) => AxlStatus::UnknownSuite,
        Error::Config(_) | Error::InvalidGroup(_) | Error::InvalidTruncation(_) => AxlStatus::ConfigError,
        _ => AxlStatus::RuntimeError,
    };
    set_error(err.to_string());
    status
}

fn guard(f: impl FnOnce() -> AxlStatus) -> AxlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            AxlStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, AxlStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(AxlStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        AxlStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> AxlStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            AxlStatus::Ok
        }
        Err(_) => {
            set_error("result contains a nul byte");
            AxlStatus::RuntimeError
        }
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return AxlStatus::NullPointer;
        }
    };
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn axl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn axl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn box_scenario(scenario: Scenario, out: *mut *mut AxlScenario) -> AxlStatus {
    let handle = Box::new(AxlScenario { scenario, session: None });
    // SAFETY: caller checked `out` for null.
    unsafe { *out = Box::into_raw(handle) };
    AxlStatus::Ok
}

/// Parses a scenario from TOML text.
///
/// # Safety
/// `toml` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axl_scenario_from_toml(toml: *const c_char, out: *mut *mut AxlScenario) -> AxlStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(toml));
        match Scenario::from_toml_str(text) {
            Ok(s) => box_scenario(s, out),
            Err(e) => fail(e),
        }
    })
}

/// Reads a scenario file.
///
/// # Safety
/// `path` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axl_scenario_from_path(path: *const c_char, out: *mut *mut AxlScenario) -> AxlStatus {
    guard(|| {
        non_null!(out);
        let p = try_status!(read_str(path));
        match Scenario::from_path(Path::new(p)) {
            Ok(s) => box_scenario(s, out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be NULL or a handle from `axl_scenario_from_*`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn axl_scenario_free(s: *mut AxlScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live scenario handle.
#[no_mangle]
pub unsafe extern "C" fn axl_scenario_set_radius(s: *mut AxlScenario, radius: u32) -> AxlStatus {
    guard(|| {
        non_null!(s);
        let h = &mut *s;
        let mut next = h.scenario.clone();
        next.truncation.radius = radius;
        if let Err(e) = next.validate() {
            return fail(e);
        }
        h.scenario = next;
        h.session = None;
        AxlStatus::Ok
    })
}

/// # Safety
/// `s` must be a live scenario handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axl_audit(s: *mut AxlScenario, out: *mut AxlAuditSummary) -> AxlStatus {
    guard(|| {
        non_null!(s, out);
        let session = match (*s).session() {
            Ok(x) => x,
            Err(e) => return fail(e),
        };
        let a = audit_axial_pair(session);
        let c = a.constants.as_ref();
        *out = AxlAuditSummary {
            axiom1: a.axiom1.status.into(),
            axiom2: a.axiom2.status.into(),
            virtually_cyclic: a.virtually_cyclic,
            constants_known: c.is_some(),
            constants_stable: c.is_some_and(|c| c.stable),
            m_hat: c.map_or(0, |c| c.m_hat),
            l_hat: c.map_or(0, |c| c.l_hat),
            n_hat: c.map_or(0, |c| c.n_hat),
            radius: session.top().radius(),
        };
        AxlStatus::Ok
    })
}

/// Full report as JSON. Nothing is written to disk.
///
/// # Safety
/// `s` must be a live scenario handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axl_report_json(s: *mut AxlScenario, out: *mut *mut c_char) -> AxlStatus {
    guard(|| {
        non_null!(s, out);
        let session = match (*s).session() {
            Ok(x) => x,
            Err(e) => return fail(e),
        };
        match build_report(session) {
            Ok(r) => write_string(out, r.to_json()),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be a live scenario handle, `suite` a nul-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axl_verify_suite(s: *mut AxlScenario, suite: *const c_char, out: *mut AxlVerdict) -> AxlStatus {
    guard(|| {
        non_null!(s, out);
        let name = try_status!(read_str(suite));
        let session = match (*s).session() {
            Ok(x) => x,
            Err(e) => return fail(e),
        };
        match verify_lemma(session, name) {
            Ok(r) => {
                *out = r.status.into();
                AxlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axl_group_new(family: AxlFamily, rank: usize, out: *mut *mut AxlGroup) -> AxlStatus {
    guard(|| {
        non_null!(out);
        let model = match family {
            AxlFamily::Free => GroupModel::free(rank),
            AxlFamily::FreeAbelian => GroupModel::free_abelian(rank),
        };
        if let Err(e) = model.validate() {
            return fail(e);
        }
        *out = Box::into_raw(Box::new(AxlGroup { model }));
        AxlStatus::Ok
    })
}

/// # Safety
/// `g` must be NULL or a handle from `axl_group_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn axl_group_free(g: *mut AxlGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Reduced form of a word such as `"a^2 b A"`.
///
/// # Safety
/// `g` must be a live group handle, `word` a nul-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axl_group_normal_form(g: *const AxlGroup, word: *const c_char, out: *mut *mut c_char) -> AxlStatus {
    guard(|| {
        non_null!(g, out);
        let w = try_status!(read_str(word));
        match (*g).model.parse(w) {
            Ok(x) => write_string(out, x.to_string()),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// As for [`axl_group_normal_form`], with two input words.
#[no_mangle]
pub unsafe extern "C" fn axl_group_multiply(
    g: *const AxlGroup,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> AxlStatus {
    guard(|| {
        non_null!(g, out);
        let (x, y) = (try_status!(read_str(x)), try_status!(read_str(y)));
        let model = &(*g).model;
        let product = model
            .parse(x)
            .and_then(|x| model.parse(y).and_then(|y| model.multiply(&x, &y)));
        match product {
            Ok(p) => write_string(out, p.to_string()),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `g` must be a live group handle, `word` a nul-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn axl_group_word_length(g: *const AxlGroup, word: *const c_char, out: *mut u32) -> AxlStatus {
    guard(|| {
        non_null!(g, out);
        let w = try_status!(read_str(word));
        match (*g).model.parse(w) {
            Ok(x) => {
                *out = x.len();
                AxlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
