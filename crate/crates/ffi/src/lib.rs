//! C ABI over `recamp-core`.
//!
//! Instances and results are opaque heap handles released with their `_free`
//! functions. Every fallible call returns a [`RecampStatus`]; on failure,
//! [`recamp_last_error_message`] describes the error on the calling thread.
//! Strings handed out by the library are NUL-terminated UTF-8 and must be
//! released with [`recamp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Instant;

use recamp_core::election::{winners, Rule};
use recamp_core::io::{
    parse_assignment, parse_election, parse_instance, render, render_instance, RunReport,
};
use recamp_core::model::{verify, RecampaignInstance};
use recamp_core::solvers::{
    solve, AlgorithmChoice, BruteOptions, SolveError, SolveResult, DEFAULT_NODE_BUDGET,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecampStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    WrongVariant = 5,
    Resource = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecampAlgorithm {
    Auto = 0,
    Crc1 = 1,
    BMatch = 2,
    Fpt = 3,
    E1 = 4,
    E2 = 5,
    Brute = 6,
}

impl From<RecampAlgorithm> for AlgorithmChoice {
    fn from(a: RecampAlgorithm) -> Self {
        match a {
            RecampAlgorithm::Auto => AlgorithmChoice::Auto,
            RecampAlgorithm::Crc1 => AlgorithmChoice::Crc1,
            RecampAlgorithm::BMatch => AlgorithmChoice::BMatch,
            RecampAlgorithm::Fpt => AlgorithmChoice::Fpt,
            RecampAlgorithm::E1 => AlgorithmChoice::E1,
            RecampAlgorithm::E2 => AlgorithmChoice::E2,
            RecampAlgorithm::Brute => AlgorithmChoice::Brute,
        }
    }
}

/// A parsed recampaigning instance.
pub struct RecampInstance {
    inner: RecampaignInstance,
}

/// The outcome of [`recamp_solve`].
pub struct RecampResult {
    inner: SolveResult,
    wall_time_ms: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(RecampStatus, String);

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> RecampStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RecampStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RecampStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(
            RecampStatus::NullPointer,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(RecampStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            RecampStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("JSON has no interior NUL")
        .into_raw()
}

fn parse_failure(e: impl ToString) -> Failure {
    Failure(RecampStatus::Parse, e.to_string())
}

/// Parses an instance document. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string or null; `out` must be writable or
/// null.
#[no_mangle]
pub unsafe extern "C" fn recamp_instance_from_json(
    json: *const c_char,
    out: *mut *mut RecampInstance,
) -> RecampStatus {
    guarded(|| {
        out_ptr(out)?;
        let inst = parse_instance(text(json, "json")?).map_err(parse_failure)?;
        *out = Box::into_raw(Box::new(RecampInstance { inner: inst }));
        Ok(())
    })
}

/// Renders an instance as a document. On success `*out` owns a new string.
///
/// # Safety
/// `inst` must be a live handle or null; `out` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_instance_to_json(
    inst: *const RecampInstance,
    out: *mut *mut c_char,
) -> RecampStatus {
    guarded(|| {
        out_ptr(out)?;
        let inst = inst.as_ref().ok_or(Failure(
            RecampStatus::NullPointer,
            "instance is null".into(),
        ))?;
        *out = into_c_string(render_instance(&inst.inner));
        Ok(())
    })
}

/// Number of districts, or 0 for a null handle.
///
/// # Safety
/// `inst` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_instance_district_count(inst: *const RecampInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.k())
}

/// Number of additional candidates, or 0 for a null handle.
///
/// # Safety
/// `inst` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_instance_additional_count(inst: *const RecampInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.n())
}

/// # Safety
/// `inst` must be a handle from [`recamp_instance_from_json`] not yet freed,
/// or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_instance_free(inst: *mut RecampInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Decides an instance. A `node_budget` of 0 selects the default brute-force
/// budget. A No answer is a successful call; inspect it with
/// [`recamp_result_is_yes`].
///
/// # Safety
/// `inst` must be a live handle or null; `out` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_solve(
    inst: *const RecampInstance,
    algorithm: RecampAlgorithm,
    node_budget: u64,
    out: *mut *mut RecampResult,
) -> RecampStatus {
    guarded(|| {
        out_ptr(out)?;
        let inst = inst.as_ref().ok_or(Failure(
            RecampStatus::NullPointer,
            "instance is null".into(),
        ))?;
        let options = BruteOptions {
            node_budget: if node_budget == 0 {
                DEFAULT_NODE_BUDGET
            } else {
                node_budget
            },
        };
        let start = Instant::now();
        let result = solve(&inst.inner, algorithm.into(), &options).map_err(|e| {
            let status = match e {
                SolveError::WrongVariant(_) => RecampStatus::WrongVariant,
                SolveError::Resource { .. } => RecampStatus::Resource,
                SolveError::Model(_) | SolveError::Matching(_) => RecampStatus::Invalid,
                SolveError::UnsoundWitness => RecampStatus::Internal,
            };
            Failure(status, e.to_string())
        })?;
        *out = Box::into_raw(Box::new(RecampResult {
            inner: result,
            wall_time_ms: start.elapsed().as_secs_f64() * 1000.0,
        }));
        Ok(())
    })
}

/// # Safety
/// `res` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_result_is_yes(res: *const RecampResult) -> bool {
    res.as_ref().is_some_and(|r| r.inner.answer.is_yes())
}

/// Writes the witness cost of a Yes answer on a priced instance to `*cost`
/// and returns true; returns false otherwise.
///
/// # Safety
/// `res` must be a live handle or null; `cost` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_result_cost(res: *const RecampResult, cost: *mut u64) -> bool {
    match (
        res.as_ref().and_then(|r| r.inner.stats.cost),
        cost.is_null(),
    ) {
        (Some(c), false) => {
            *cost = c;
            true
        }
        _ => false,
    }
}

/// Renders the run report (answer, algorithm, assignment, cost, statistics).
///
/// # Safety
/// `res` must be a live handle or null; `out` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_result_to_json(
    res: *const RecampResult,
    out: *mut *mut c_char,
) -> RecampStatus {
    guarded(|| {
        out_ptr(out)?;
        let res = res
            .as_ref()
            .ok_or(Failure(RecampStatus::NullPointer, "result is null".into()))?;
        *out = into_c_string(render(&RunReport::new(&res.inner, res.wall_time_ms)));
        Ok(())
    })
}

/// # Safety
/// `res` must be a handle from [`recamp_solve`] not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_result_free(res: *mut RecampResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Checks an assignment document against an instance; `*valid` receives the
/// verdict.
///
/// # Safety
/// `inst` must be a live handle or null; `assignment_json` a NUL-terminated
/// string or null; `valid` writable or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_verify_json(
    inst: *const RecampInstance,
    assignment_json: *const c_char,
    valid: *mut bool,
) -> RecampStatus {
    guarded(|| {
        out_ptr(valid)?;
        let inst = inst.as_ref().ok_or(Failure(
            RecampStatus::NullPointer,
            "instance is null".into(),
        ))?;
        let asg = parse_assignment(text(assignment_json, "assignment")?).map_err(parse_failure)?;
        let report =
            verify(&inst.inner, &asg).map_err(|e| Failure(RecampStatus::Invalid, e.to_string()))?;
        *valid = report.valid;
        Ok(())
    })
}

/// Winners of an election document under a rule such as `borda` or
/// `t-approval:2`, as a JSON array of names.
///
/// # Safety
/// `election_json` and `rule` must be NUL-terminated strings or null; `out`
/// writable or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_winners_json(
    election_json: *const c_char,
    rule: *const c_char,
    out: *mut *mut c_char,
) -> RecampStatus {
    guarded(|| {
        out_ptr(out)?;
        let rule: Rule = text(rule, "rule")?.parse().map_err(parse_failure)?;
        let e = parse_election(text(election_json, "election")?).map_err(parse_failure)?;
        let w = winners(&rule, &e).map_err(|e| Failure(RecampStatus::Invalid, e.to_string()))?;
        *out = into_c_string(serde_json::to_string(&w).expect("names serialize"));
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn recamp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn recamp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
