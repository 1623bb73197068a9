use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tsa_ffi::*;

fn fixture(name: &str) -> CString {
    let path = format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn load(name: &str) -> *mut TsaAutomaton {
    let mut a = ptr::null_mut();
    let status = unsafe { tsa_automaton_from_json(fixture(name).as_ptr(), &mut a) };
    assert_eq!(status, TsaStatus::Ok);
    a
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    tsa_string_free(s);
    out
}

fn last_error() -> String {
    let p = tsa_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn options(monad: &CString) -> TsaMinimizeOptions {
    TsaMinimizeOptions {
        monad: monad.as_ptr(),
        strategy: ptr::null(),
        field: ptr::null(),
        group_json: ptr::null(),
        cap: 0,
        verify_depth: 0,
    }
}

#[test]
fn minimize_and_run_through_handles() {
    let a = load("aa1.json");
    let monad = CString::new("alternating").unwrap();
    let mut opts = options(&monad);
    opts.verify_depth = 6;
    let mut m = ptr::null_mut();
    let mut summary = ptr::null_mut();
    unsafe {
        assert_eq!(tsa_minimize(a, &opts, &mut m, &mut summary), TsaStatus::Ok);
        assert_eq!(take(summary), "states_in=5 carrier=11 generators=3");
        let mut n = 0;
        assert_eq!(tsa_automaton_state_count(m, &mut n), TsaStatus::Ok);
        assert_eq!(n, 3);
        let word = CString::new("baa").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(tsa_automaton_run(m, word.as_ptr(), &mut out), TsaStatus::Ok);
        assert_eq!(take(out), "true");
        assert_eq!(tsa_equiv(a, m, -1, 0, ptr::null_mut()), TsaStatus::Ok);
        tsa_automaton_free(m);
        tsa_automaton_free(a);
    }
}

#[test]
fn group_minimization_takes_inline_group() {
    let a = load("ga1.json");
    let monad = CString::new("group").unwrap();
    let group = fixture("perm_ab.json");
    let mut opts = options(&monad);
    opts.group_json = group.as_ptr();
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(
            tsa_minimize(a, &opts, &mut m, ptr::null_mut()),
            TsaStatus::Ok
        );
        let word = CString::new("bb").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(tsa_automaton_run(m, word.as_ptr(), &mut out), TsaStatus::Ok);
        assert_eq!(take(out), "b");
        tsa_automaton_free(m);
        tsa_automaton_free(a);
    }
}

#[test]
fn inequivalence_reports_counterexample() {
    let a = load("jsl.json");
    let b = load("aa1.json");
    let mut cx = ptr::null_mut();
    unsafe {
        assert_eq!(tsa_equiv(a, b, -1, 0, &mut cx), TsaStatus::SemanticFailure);
        assert_eq!(take(cx), "b");
        assert!(last_error().contains("counterexample"));
        tsa_automaton_free(a);
        tsa_automaton_free(b);
    }
}

#[test]
fn determinize_round_trips_through_json() {
    let a = load("intro_nfa.json");
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(tsa_determinize(a, 0, true, &mut d), TsaStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(tsa_automaton_to_json(d, &mut json), TsaStatus::Ok);
        let text = CString::new(take(json)).unwrap();
        let mut again = ptr::null_mut();
        assert_eq!(
            tsa_automaton_from_json(text.as_ptr(), &mut again),
            TsaStatus::Ok
        );
        let mut n = 0;
        assert_eq!(tsa_automaton_state_count(again, &mut n), TsaStatus::Ok);
        assert_eq!(n, 8);
        for p in [a, d, again] {
            tsa_automaton_free(p);
        }
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut a = ptr::null_mut();
    let bad = CString::new("{\"kind\": \"moore\"}").unwrap();
    unsafe {
        assert_eq!(
            tsa_automaton_from_json(bad.as_ptr(), &mut a),
            TsaStatus::InputError
        );
        assert!(!last_error().is_empty());
        assert_eq!(
            tsa_automaton_from_json(ptr::null(), &mut a),
            TsaStatus::NullPointer
        );
        assert_eq!(
            tsa_automaton_state_count(ptr::null(), ptr::null_mut()),
            TsaStatus::NullPointer
        );

        let m = load("aa1.json");
        let monad = CString::new("caba").unwrap();
        let mut opts = options(&monad);
        opts.cap = 10;
        let mut out = ptr::null_mut();
        assert_eq!(
            tsa_minimize(m, &opts, &mut out, ptr::null_mut()),
            TsaStatus::CapExceeded
        );
        assert!(out.is_null());

        let word = CString::new("z").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(
            tsa_automaton_run(m, word.as_ptr(), &mut s),
            TsaStatus::InputError
        );
        tsa_automaton_free(m);
    }
    assert_eq!(
        unsafe { tsa_automaton_from_json(fixture("ca2.json").as_ptr(), &mut a) },
        TsaStatus::Ok
    );
    assert!(tsa_last_error().is_null());
    unsafe { tsa_automaton_free(a) };
}
