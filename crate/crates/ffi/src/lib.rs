//! C interface to `tsa-core`.
//!
//! Automata live behind opaque [`TsaAutomaton`] handles. Every function
//! returns a [`TsaStatus`]; on failure a message is available from
//! [`tsa_last_error`] until the next call on the same thread. Strings handed
//! out by the library must be released with [`tsa_string_free`], handles
//! with [`tsa_automaton_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tsa_core::cli::{
    self, Document, EquivMode, GroupDocument, MinimizeOptions, MonadKind, StrategyChoice,
};
use tsa_core::engine::DEFAULT_CAP;
use tsa_core::field::Field;
use tsa_core::Error;

/// Result codes; the first four match the exit codes of the `tsa` binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsaStatus {
    Ok = 0,
    /// Inequivalent automata or a failed verification.
    SemanticFailure = 1,
    InputError = 2,
    /// A cap was exceeded or the request is not supported.
    CapExceeded = 3,
    NullPointer = 4,
    Panic = 5,
}

/// An automaton document of any kind.
pub struct TsaAutomaton(Document);

/// Options for [`tsa_minimize`]. Null strings and zero numbers select the
/// defaults: strategy `fast`, field `rational`, the default cap, and no
/// verification.
#[repr(C)]
pub struct TsaMinimizeOptions {
    pub monad: *const c_char,
    pub strategy: *const c_char,
    pub field: *const c_char,
    /// Group document (JSON), required for the group monad on
    /// deterministic input.
    pub group_json: *const c_char,
    pub cap: usize,
    pub verify_depth: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Core(Error),
    Null(&'static str),
    Semantic(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TsaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsaStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("`{what}` is null"));
            TsaStatus::NullPointer
        }
        Ok(Err(Failure::Semantic(msg))) => {
            set_error(msg);
            TsaStatus::SemanticFailure
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            match e.exit_code() {
                3 => TsaStatus::CapExceeded,
                _ => TsaStatus::InputError,
            }
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            TsaStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Core(Error::input(format!("`{what}` is not UTF-8"))))
}

unsafe fn optional<'a>(p: *const c_char, what: &'static str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn handle<'a>(p: *const TsaAutomaton, what: &'static str) -> Result<&'a Document, Failure> {
    p.as_ref().map(|a| &a.0).ok_or(Failure::Null(what))
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = CString::new(s)
        .expect("documents hold no nul bytes")
        .into_raw();
    Ok(())
}

unsafe fn give_handle(out: *mut *mut TsaAutomaton, doc: Document) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = Box::into_raw(Box::new(TsaAutomaton(doc)));
    Ok(())
}

fn cap_or_default(cap: usize) -> usize {
    if cap == 0 {
        DEFAULT_CAP
    } else {
        cap
    }
}

/// The message of the last failure on this thread, or null. The pointer
/// stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn tsa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tsa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON automaton document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tsa_automaton_from_json(
    json: *const c_char,
    out: *mut *mut TsaAutomaton,
) -> TsaStatus {
    guard(|| {
        let doc = Document::parse(text(json, "json")?)?;
        give_handle(out, doc)
    })
}

/// # Safety
/// `a` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tsa_automaton_free(a: *mut TsaAutomaton) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Canonical JSON of the automaton.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tsa_automaton_to_json(
    a: *const TsaAutomaton,
    out: *mut *mut c_char,
) -> TsaStatus {
    guard(|| give_string(out, handle(a, "automaton")?.to_json()))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tsa_automaton_state_count(
    a: *const TsaAutomaton,
    out: *mut usize,
) -> TsaStatus {
    guard(|| {
        let n = handle(a, "automaton")?.state_count();
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = n;
        Ok(())
    })
}

/// Output of the automaton on `word`, rendered as the CLI prints it.
///
/// # Safety
/// `a` must be a live handle, `word` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tsa_automaton_run(
    a: *const TsaAutomaton,
    word: *const c_char,
    out: *mut *mut c_char,
) -> TsaStatus {
    guard(|| {
        let value = cli::run(handle(a, "automaton")?, text(word, "word")?)?;
        give_string(out, value)
    })
}

/// Minimizes `a` into a new handle. `summary` may be null; otherwise it
/// receives the `states_in=.. carrier=.. generators=..` line. A failed
/// verification returns `SEMANTIC_FAILURE` and no handle.
///
/// # Safety
/// `a` and `options` must be valid; `out` must be writable; string fields
/// of `options` must be null or nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn tsa_minimize(
    a: *const TsaAutomaton,
    options: *const TsaMinimizeOptions,
    out: *mut *mut TsaAutomaton,
    summary: *mut *mut c_char,
) -> TsaStatus {
    guard(|| {
        let doc = handle(a, "automaton")?;
        let o = options.as_ref().ok_or(Failure::Null("options"))?;
        let mut opts = MinimizeOptions::new(
            MonadKind::parse(text(o.monad, "monad")?)?,
            cap_or_default(o.cap),
        );
        if let Some(s) = optional(o.strategy, "strategy")? {
            opts.strategy = StrategyChoice::parse(s)?;
        }
        opts.field = optional(o.field, "field")?.map(Field::parse).transpose()?;
        opts.group = optional(o.group_json, "group_json")?
            .map(GroupDocument::parse)
            .transpose()?;
        opts.verify = (o.verify_depth > 0).then_some(o.verify_depth);
        let outcome = cli::minimize(doc, &opts)?;
        if let Some(report) = &outcome.verification {
            if !report.passed() {
                return Err(Failure::Semantic(format!("verification failed:\n{report}")));
            }
        }
        if !summary.is_null() {
            give_string(summary, outcome.summary)?;
        }
        give_handle(out, outcome.document)
    })
}

/// Deterministic machine of the reachable configurations of `a`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tsa_determinize(
    a: *const TsaAutomaton,
    cap: usize,
    then_minimize: bool,
    out: *mut *mut TsaAutomaton,
) -> TsaStatus {
    guard(|| {
        let doc = cli::determinize(handle(a, "automaton")?, cap_or_default(cap), then_minimize)?;
        give_handle(out, doc)
    })
}

/// Compares two automata: exactly when `max_len` is negative, otherwise on
/// all words up to `max_len`. Returns `OK` when equal and
/// `SEMANTIC_FAILURE` otherwise; `counterexample` (may be null) then
/// receives the distinguishing word.
///
/// # Safety
/// `a` and `b` must be live handles; `counterexample` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tsa_equiv(
    a: *const TsaAutomaton,
    b: *const TsaAutomaton,
    max_len: isize,
    cap: usize,
    counterexample: *mut *mut c_char,
) -> TsaStatus {
    guard(|| {
        let mode = if max_len < 0 {
            EquivMode::Exact
        } else {
            EquivMode::Bounded(max_len as usize)
        };
        let outcome = cli::equiv(handle(a, "a")?, handle(b, "b")?, mode, cap_or_default(cap))?;
        if outcome.is_equal() {
            return Ok(());
        }
        if let tsa_core::Equivalence::Counterexample(w) = &outcome.equivalence {
            if !counterexample.is_null() {
                give_string(counterexample, w.display(&outcome.alphabet).to_string())?;
            }
        }
        Err(Failure::Semantic(outcome.to_string()))
    })
}
