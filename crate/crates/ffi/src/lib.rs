//! C ABI over `pauli-minimax`.
//!
//! Objects are opaque handles created by `pm_*_new` and released by the
//! matching `pm_*_free`. Every fallible call returns a [`PmStatus`]; on
//! failure [`pm_last_error`] describes the error for the calling thread.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`pm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pauli_minimax::io::{parse_pair_file, report_json, sweep_csv};
use pauli_minimax::verify::{run, VerifyConfig};
use pauli_minimax::{full_report, ChannelPair, DiscriminationReport, Error, PwaFunction, Rational};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidDistribution = 4,
    InvalidArgument = 5,
    OutOfRange = 6,
    Overflow = 7,
    Internal = 8,
    Panic = 9,
}

/// A validated pair of Pauli channels.
pub struct PmPair(ChannelPair);

/// The full analysis of a pair.
pub struct PmReport(DiscriminationReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
}

fn status_of(err: &Error) -> PmStatus {
    match err {
        Error::Parse { .. } | Error::Format { .. } => PmStatus::ParseError,
        Error::InvalidDistribution { .. } => PmStatus::InvalidDistribution,
        Error::InvalidArgument(_) | Error::DivisionByZero => PmStatus::InvalidArgument,
        Error::PriorOutOfRange(_) => PmStatus::OutOfRange,
        Error::Overflow => PmStatus::Overflow,
        _ => PmStatus::Internal,
    }
}

fn fail(status: PmStatus, message: &str) -> PmStatus {
    set_error(message);
    status
}

/// Run `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), PmStatus>) -> PmStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(PmStatus::Panic, "panic inside pauli-minimax"),
    }
}

fn lib<T>(r: pauli_minimax::Result<T>) -> Result<T, PmStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, PmStatus> {
    if p.is_null() {
        return Err(fail(PmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(PmStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, PmStatus> {
    p.as_mut().ok_or_else(|| fail(PmStatus::NullPointer, "null output pointer"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, PmStatus> {
    p.as_ref().ok_or_else(|| fail(PmStatus::NullPointer, "null handle"))
}

fn give_string(s: String, dst: &mut *mut c_char) -> Result<(), PmStatus> {
    let c = CString::new(s).map_err(|_| fail(PmStatus::Internal, "output contains NUL"))?;
    *dst = c.into_raw();
    Ok(())
}

fn write_rational(r: Rational, num: *mut i64, den: *mut i64) -> Result<(), PmStatus> {
    let (n, d) = unsafe { (out(num)?, out(den)?) };
    *n = r.numer();
    *d = r.denom();
    Ok(())
}

unsafe fn weights(q: *const *const c_char) -> Result<[Rational; 4], PmStatus> {
    if q.is_null() {
        return Err(fail(PmStatus::NullPointer, "null weight array"));
    }
    let mut w = [Rational::ZERO; 4];
    for (i, slot) in w.iter_mut().enumerate() {
        *slot = lib(text(*q.add(i))?.parse())?;
    }
    Ok(w)
}

unsafe fn risk_at(
    pair: *const PmPair,
    p_num: i64,
    p_den: i64,
    curve: fn(&ChannelPair) -> pauli_minimax::Result<PwaFunction>,
    num: *mut i64,
    den: *mut i64,
) -> PmStatus {
    guard(|| {
        let p = lib(Rational::new(p_num, p_den))?;
        if p.is_negative() || p > Rational::ONE {
            return Err(fail(PmStatus::OutOfRange, &format!("prior {p} is outside [0, 1]")));
        }
        let r = lib(curve(&handle(pair)?.0).and_then(|f| f.eval(p)))?;
        write_rational(r, num, den)
    })
}

/// Message for the last failed call on this thread; empty after a clean success.
/// The pointer stays valid until the next `pm_*` call on the same thread.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a pair from two arrays of four weight strings ("3/10", "0.3", "1").
///
/// # Safety
/// `q1` and `q2` must each point to four valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn pm_pair_new(
    q1: *const *const c_char,
    q2: *const *const c_char,
    pair: *mut *mut PmPair,
) -> PmStatus {
    guard(|| {
        let dst = out(pair)?;
        let p = lib(ChannelPair::from_probabilities(weights(q1)?, weights(q2)?))?;
        *dst = Box::into_raw(Box::new(PmPair(p)));
        Ok(())
    })
}

/// Build a pair from pair-file JSON.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pm_pair_from_json(json: *const c_char, pair: *mut *mut PmPair) -> PmStatus {
    guard(|| {
        let dst = out(pair)?;
        let file = lib(parse_pair_file(text(json)?, "<json>"))?;
        *dst = Box::into_raw(Box::new(PmPair(file.pair)));
        Ok(())
    })
}

/// # Safety
/// `pair` must come from `pm_pair_new`/`pm_pair_from_json` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pm_pair_free(pair: *mut PmPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Exact entangled Bayes risk at the prior `p_num / p_den`.
///
/// # Safety
/// `pair` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_bayes_risk_entangled(
    pair: *const PmPair,
    p_num: i64,
    p_den: i64,
    num: *mut i64,
    den: *mut i64,
) -> PmStatus {
    risk_at(pair, p_num, p_den, pauli_minimax::bayes_risk_entangled, num, den)
}

/// Exact no-ancilla Bayes risk at the prior `p_num / p_den`.
///
/// # Safety
/// `pair` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_bayes_risk_no_ancilla(
    pair: *const PmPair,
    p_num: i64,
    p_den: i64,
    num: *mut i64,
    den: *mut i64,
) -> PmStatus {
    risk_at(pair, p_num, p_den, pauli_minimax::bayes_risk_no_ancilla, num, den)
}

/// Run the full analysis.
///
/// # Safety
/// `pair` must be a live handle; `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_report_new(pair: *const PmPair, report: *mut *mut PmReport) -> PmStatus {
    guard(|| {
        let dst = out(report)?;
        let r = lib(full_report(&handle(pair)?.0))?;
        *dst = Box::into_raw(Box::new(PmReport(r)));
        Ok(())
    })
}

/// # Safety
/// `report` must come from `pm_report_new` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pm_report_free(report: *mut PmReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Minimax risk with an entangled input, and its worst prior (left end of any plateau).
///
/// # Safety
/// `report` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_report_entangled(
    report: *const PmReport,
    risk_num: *mut i64,
    risk_den: *mut i64,
    prior_num: *mut i64,
    prior_den: *mut i64,
) -> PmStatus {
    guard(|| {
        let m = handle(report)?.0.entangled;
        write_rational(m.value, risk_num, risk_den)?;
        write_rational(m.p_star, prior_num, prior_den)
    })
}

/// Minimax risk without ancilla, and its worst prior (left end of any plateau).
///
/// # Safety
/// `report` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_report_no_ancilla(
    report: *const PmReport,
    risk_num: *mut i64,
    risk_den: *mut i64,
    prior_num: *mut i64,
    prior_den: *mut i64,
) -> PmStatus {
    guard(|| {
        let m = handle(report)?.0.no_ancilla;
        write_rational(m.value, risk_num, risk_den)?;
        write_rational(m.p_star, prior_num, prior_den)
    })
}

/// Case label such as "T5_middle_double" or "Mirror_T5_triple_left".
///
/// # Safety
/// `report` must be a live handle; `label` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_report_case_label(report: *const PmReport, label: *mut *mut c_char) -> PmStatus {
    guard(|| {
        let dst = out(label)?;
        give_string(handle(report)?.0.case.to_string(), dst)
    })
}

/// Whether an entangled input strictly lowers the minimax risk.
///
/// # Safety
/// `report` must be a live handle; `helps` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_report_entanglement_helps(report: *const PmReport, helps: *mut bool) -> PmStatus {
    guard(|| {
        *out(helps)? = handle(report)?.0.entanglement_strictly_helps;
        Ok(())
    })
}

/// Number of optimal single-qubit inputs; 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_report_state_count(report: *const PmReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.optimal_inputs_no_ancilla.states.len())
}

/// Bloch vector of optimal input `index`.
///
/// # Safety
/// `report` must be a live handle; `bloch` must point to three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pm_report_state(report: *const PmReport, index: usize, bloch: *mut f64) -> PmStatus {
    guard(|| {
        let states = &handle(report)?.0.optimal_inputs_no_ancilla.states;
        let s = states
            .get(index)
            .ok_or_else(|| fail(PmStatus::OutOfRange, &format!("state {index} of {}", states.len())))?;
        if bloch.is_null() {
            return Err(fail(PmStatus::NullPointer, "null output pointer"));
        }
        ptr::copy_nonoverlapping(s.n.as_ptr(), bloch, 3);
        Ok(())
    })
}

/// The report as JSON (same schema as the command-line `analyze`).
///
/// # Safety
/// `report` must be a live handle; `json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_report_json(report: *const PmReport, json: *mut *mut c_char) -> PmStatus {
    guard(|| {
        let dst = out(json)?;
        let v = lib(report_json(None, &handle(report)?.0))?;
        give_string(v.to_string(), dst)
    })
}

/// Risk-curve CSV on `points` uniform priors plus every breakpoint.
///
/// # Safety
/// `pair` must be a live handle; `csv` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_sweep_csv(pair: *const PmPair, points: usize, csv: *mut *mut c_char) -> PmStatus {
    guard(|| {
        let dst = out(csv)?;
        let s = lib(sweep_csv(&handle(pair)?.0, points))?;
        give_string(s, dst)
    })
}

/// Run the randomized verification suites.
///
/// # Safety
/// `all_passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_verify(trials: usize, seed: u64, all_passed: *mut bool) -> PmStatus {
    guard(|| {
        let dst = out(all_passed)?;
        if trials == 0 {
            return Err(fail(PmStatus::InvalidArgument, "trials must be at least 1"));
        }
        let summary = run(&VerifyConfig::new(trials, seed));
        *dst = summary.all_passed();
        if !*dst {
            set_error(&summary.render());
        }
        Ok(())
    })
}

/// # Safety
/// `s` must come from a `pm_*` out-parameter and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
