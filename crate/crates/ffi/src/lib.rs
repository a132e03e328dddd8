//! C ABI over `nusp`.
//!
//! Networks and machines are opaque handles created by the `*_parse` and
//! `nusp_compile` functions and released with the matching `*_free`.
//! Every fallible function returns a [`NuspStatus`]; on failure a message is
//! available from [`nusp_last_error`] on the same thread until the next call.
//! Strings returned to the caller are released with [`nusp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nusp::formats::{emit_machine, emit_network, parse_machine, parse_network};
use nusp::network::{Network, Persistence};
use nusp::runtime::{RunError, RunLimits, Simulator, Verdict};
use nusp::symbol::Word;
use nusp::tm::{tm_run, TmVerdict, TuringMachine};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuspStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidNetwork = 4,
    InvalidInput = 5,
    Compile = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuspPersistence {
    Literal = 0,
    Preserve = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuspVerdict {
    Accepted = 0,
    StepLimitReached = 1,
    ResourceLimitReached = 2,
    CycleDetected = 3,
    Exhausted = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuspTmVerdict {
    Accept = 0,
    Reject = 1,
    BoundExceeded = 2,
}

/// Outcome of [`nusp_run`]. `step` is the accepting step, or 0.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NuspRunResult {
    pub verdict: NuspVerdict,
    pub step: usize,
    pub steps_taken: usize,
}

/// Outcome of [`nusp_tm_run`]. `depth` is 0 for `BOUND_EXCEEDED`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NuspTmResult {
    pub verdict: NuspTmVerdict,
    pub depth: usize,
}

/// Opaque network handle.
pub struct NuspNetwork {
    inner: Network,
}

/// Opaque machine handle.
pub struct NuspMachine {
    inner: TuringMachine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Fail(NuspStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NuspStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NuspStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NuspStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(NuspStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(NuspStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(NuspStatus::NullArgument, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(NuspStatus::NullArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn input_word(s: &str, chars: bool) -> Result<Word, Fail> {
    if chars {
        Ok(Word::from_chars(s))
    } else {
        Word::parse_tokens(s).map_err(|e| Fail(NuspStatus::InvalidInput, e.to_string()))
    }
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn nusp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn nusp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nusp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a network file.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nusp_network_parse(text: *const c_char, out: *mut *mut NuspNetwork) -> NuspStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let t = c_str(text, "text")?;
        let inner = parse_network(t).map_err(|e| Fail(NuspStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(NuspNetwork { inner }));
        Ok(())
    })
}

/// Canonical text of a network; free it with [`nusp_string_free`].
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nusp_network_emit(net: *const NuspNetwork, out: *mut *mut c_char) -> NuspStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let net = handle(net, "net")?;
        *out = to_c_string(emit_network(&net.inner));
        Ok(())
    })
}

/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nusp_network_node_count(net: *const NuspNetwork, out: *mut usize) -> NuspStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = handle(net, "net")?.inner.nodes.len();
        Ok(())
    })
}

/// Structural check; `INVALID_NETWORK` with the report as the error message.
///
/// # Safety
/// `net` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nusp_network_validate(net: *const NuspNetwork) -> NuspStatus {
    guard(|| {
        let report = handle(net, "net")?.inner.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Fail(NuspStatus::InvalidNetwork, report.to_string()))
        }
    })
}

/// # Safety
/// `net` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nusp_network_free(net: *mut NuspNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Parses a machine file.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nusp_machine_parse(text: *const c_char, out: *mut *mut NuspMachine) -> NuspStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let t = c_str(text, "text")?;
        let inner = parse_machine(t).map_err(|e| Fail(NuspStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(NuspMachine { inner }));
        Ok(())
    })
}

/// Canonical text of a machine; free it with [`nusp_string_free`].
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nusp_machine_emit(m: *const NuspMachine, out: *mut *mut c_char) -> NuspStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = to_c_string(emit_machine(&handle(m, "machine")?.inner));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nusp_machine_free(m: *mut NuspMachine) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Compiles a machine into a new network handle.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nusp_compile(
    m: *const NuspMachine,
    persistence: NuspPersistence,
    out: *mut *mut NuspNetwork,
) -> NuspStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = handle(m, "machine")?;
        let mode = match persistence {
            NuspPersistence::Literal => Persistence::Literal,
            NuspPersistence::Preserve => Persistence::Preserve,
        };
        let cn = nusp::compile_with(&m.inner, mode).map_err(|e| Fail(NuspStatus::Compile, e.to_string()))?;
        *out = Box::into_raw(Box::new(NuspNetwork { inner: cn.network }));
        Ok(())
    })
}

/// Runs `net` on `input` (whitespace-separated tokens, or one token per
/// character when `chars` is set). `max_steps` of 0 means the default.
///
/// # Safety
/// `net` must be a live handle, `input` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn nusp_run(
    net: *const NuspNetwork,
    input: *const c_char,
    chars: bool,
    max_steps: usize,
    out: *mut NuspRunResult,
) -> NuspStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let net = handle(net, "net")?;
        let word = input_word(c_str(input, "input")?, chars)?;
        let mut limits = RunLimits::default();
        if max_steps > 0 {
            limits.max_steps = max_steps;
        }
        let (verdict, trace) = Simulator::new(&net.inner, limits).run(&word, false).map_err(|e| match e {
            RunError::Invalid(r) => Fail(NuspStatus::InvalidNetwork, r.to_string()),
            RunError::Input(e) => Fail(NuspStatus::InvalidInput, e.to_string()),
        })?;
        let (kind, step) = match verdict {
            Verdict::Accepted { step } => (NuspVerdict::Accepted, step),
            Verdict::StepLimitReached => (NuspVerdict::StepLimitReached, 0),
            Verdict::ResourceLimitReached => (NuspVerdict::ResourceLimitReached, 0),
            Verdict::CycleDetected => (NuspVerdict::CycleDetected, 0),
            Verdict::Exhausted => (NuspVerdict::Exhausted, 0),
        };
        *out = NuspRunResult { verdict: kind, step, steps_taken: trace.events.len() };
        Ok(())
    })
}

/// Breadth-first machine run with at most `bound` steps.
///
/// # Safety
/// `m` must be a live handle, `input` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn nusp_tm_run(
    m: *const NuspMachine,
    input: *const c_char,
    chars: bool,
    bound: usize,
    out: *mut NuspTmResult,
) -> NuspStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = handle(m, "machine")?;
        let word = input_word(c_str(input, "input")?, chars)?;
        let v = tm_run(&m.inner, &word, bound).map_err(|e| Fail(NuspStatus::InvalidInput, e.to_string()))?;
        *out = match v {
            TmVerdict::Accept { depth } => NuspTmResult { verdict: NuspTmVerdict::Accept, depth },
            TmVerdict::Reject { depth } => NuspTmResult { verdict: NuspTmVerdict::Reject, depth },
            TmVerdict::BoundExceeded => NuspTmResult { verdict: NuspTmVerdict::BoundExceeded, depth: 0 },
        };
        Ok(())
    })
}
