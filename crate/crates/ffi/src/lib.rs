//! C ABI over `shortlist-core`.
//!
//! Handles are opaque pointers freed with their matching `*_free`. Every
//! fallible call returns an `SlStatus`; on failure `sl_last_error` holds a
//! message for the calling thread. Strings returned through `char **out`
//! are owned by the caller and released with `sl_string_free`. Bit strings
//! cross the boundary as NUL-terminated `"0101"` text.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use shortlist_core::combinators::{build_hk, Pipeline, PipelineConfig, ProviderKind};
use shortlist_core::matching::{MatchSession, Outcome};
use shortlist_core::shortlist::{
    shortlist_report, Eval, HkFamily, MachineTable, StandardMachine, DEFAULT_STEP_BUDGET,
};
use shortlist_core::verify::witness_reverifies;
use shortlist_core::BitLabel;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    InvalidUtf8 = 3,
    ParseError = 4,
    BuildFailed = 5,
    OutsideUniverse = 6,
    Panic = 7,
}

/// Result of one matching request.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlOutcome {
    Matched = 0,
    Discarded = 1,
    DuplicateIgnored = 2,
}

/// A built and certified `H_k` with its sub-graphs.
pub struct SlPipeline {
    inner: Pipeline,
}

/// An online matching session over a pipeline's `H_k`.
pub struct SlMatch {
    inner: MatchSession<'static>,
}

/// A toy standard machine with its `H_k` family.
pub struct SlMachine {
    inner: StandardMachine,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("NUL removed"));
}

struct Fail(SlStatus, String);

fn fail(status: SlStatus, msg: impl std::fmt::Display) -> Fail {
    Fail(status, msg.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SlStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SlStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(SlStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(SlStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn label(p: *const c_char, what: &str) -> Result<BitLabel, Fail> {
    text(p, what)?
        .parse()
        .map_err(|e| fail(SlStatus::InvalidArgument, format!("{what}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| fail(SlStatus::NullArgument, format!("{what} is null")))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(SlStatus::NullArgument, "out is null"));
    }
    let c = CString::new(s).map_err(|e| fail(SlStatus::InvalidArgument, e))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(SlStatus::NullArgument, "out is null"));
    }
    *out = v;
    Ok(())
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn sl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build `H_k` with the random provider. `cap = 0` selects the default
/// `min(2^k, k + 3)`.
#[no_mangle]
pub unsafe extern "C" fn sl_pipeline_build(
    k: u32,
    c: u64,
    cap: u32,
    seed: u64,
    out: *mut *mut SlPipeline,
) -> SlStatus {
    guard(|| {
        let mut cfg = PipelineConfig::new(k as usize, c).with_seed(seed);
        if cap != 0 {
            cfg = cfg.with_cap(cap as usize);
        }
        build_into(&cfg, out)
    })
}

/// Build from a JSON pipeline config, such as the `config` field of a
/// manifest.
#[no_mangle]
pub unsafe extern "C" fn sl_pipeline_build_json(
    config_json: *const c_char,
    out: *mut *mut SlPipeline,
) -> SlStatus {
    guard(|| {
        let cfg: PipelineConfig = serde_json::from_str(text(config_json, "config_json")?)
            .map_err(|e| fail(SlStatus::ParseError, e))?;
        build_into(&cfg, out)
    })
}

unsafe fn build_into(cfg: &PipelineConfig, out: *mut *mut SlPipeline) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(SlStatus::NullArgument, "out is null"));
    }
    cfg.validate()
        .map_err(|e| fail(SlStatus::InvalidArgument, e))?;
    let p = build_hk(cfg).map_err(|e| fail(SlStatus::BuildFailed, e))?;
    *out = Box::into_raw(Box::new(SlPipeline { inner: p }));
    Ok(())
}

#[no_mangle]
pub unsafe extern "C" fn sl_pipeline_free(p: *mut SlPipeline) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Pipeline manifest as pretty JSON.
#[no_mangle]
pub unsafe extern "C" fn sl_pipeline_manifest_json(
    p: *const SlPipeline,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let p = handle(p, "pipeline")?;
        let json = serde_json::to_string_pretty(&p.inner.manifest())
            .map_err(|e| fail(SlStatus::InvalidArgument, e))?;
        put_string(out, json)
    })
}

/// Whether the `(ceil(K/c^2), K)` certificate passed, and whether it is
/// definitive (exhaustive).
#[no_mangle]
pub unsafe extern "C" fn sl_pipeline_certificate(
    p: *const SlPipeline,
    pass: *mut bool,
    definitive: *mut bool,
) -> SlStatus {
    guard(|| {
        let p = handle(p, "pipeline")?;
        let c = p.inner.hk_certificate();
        let consistent = witness_reverifies(p.inner.hk.graph.as_ref(), c);
        if !consistent {
            return Err(fail(SlStatus::BuildFailed, "certificate witness does not re-verify"));
        }
        put(pass, c.is_pass())?;
        put(definitive, c.is_definitive())
    })
}

/// Neighbors of `x` in `H_k`, newline-separated in oracle order.
#[no_mangle]
pub unsafe extern "C" fn sl_pipeline_neighbors(
    p: *const SlPipeline,
    x: *const c_char,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let p = handle(p, "pipeline")?;
        let x = label(x, "x")?;
        let ns = p
            .inner
            .hk
            .graph
            .neighbors(&x)
            .ok_or_else(|| fail(SlStatus::OutsideUniverse, format!("label {x} is outside the left universe")))?;
        put_string(out, ns.iter().map(|r| format!("{r}\n")).collect())
    })
}

/// Fresh matching session over the pipeline's `H_k`. The session keeps the
/// graph alive; the pipeline may be freed first.
#[no_mangle]
pub unsafe extern "C" fn sl_match_new(p: *const SlPipeline, out: *mut *mut SlMatch) -> SlStatus {
    guard(|| {
        let p = handle(p, "pipeline")?;
        if out.is_null() {
            return Err(fail(SlStatus::NullArgument, "out is null"));
        }
        let s = MatchSession::shared(p.inner.hk.graph.clone());
        *out = Box::into_raw(Box::new(SlMatch { inner: s }));
        Ok(())
    })
}

/// Submit one request. On `SL_OUTCOME_MATCHED`, `right` (if not null)
/// receives the matched right label; otherwise it is set to null.
#[no_mangle]
pub unsafe extern "C" fn sl_match_request(
    s: *mut SlMatch,
    x: *const c_char,
    outcome: *mut SlOutcome,
    right: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let s = s
            .as_mut()
            .ok_or_else(|| fail(SlStatus::NullArgument, "session is null"))?;
        let x = label(x, "x")?;
        if outcome.is_null() {
            return Err(fail(SlStatus::NullArgument, "outcome is null"));
        }
        let o = s
            .inner
            .request(&x)
            .map_err(|e| fail(SlStatus::OutsideUniverse, e))?;
        let (code, r) = match o {
            Outcome::Matched(r) => (SlOutcome::Matched, Some(r)),
            Outcome::Discarded => (SlOutcome::Discarded, None),
            Outcome::DuplicateIgnored => (SlOutcome::DuplicateIgnored, None),
        };
        *outcome = code;
        if !right.is_null() {
            *right = ptr::null_mut();
            if let Some(r) = r {
                put_string(right, r.to_string())?;
            }
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sl_match_counts(
    s: *const SlMatch,
    matched: *mut u64,
    discarded: *mut u64,
) -> SlStatus {
    guard(|| {
        let s = handle(s, "session")?;
        put(matched, s.inner.matched().len() as u64)?;
        put(discarded, s.inner.discarded().len() as u64)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sl_match_free(s: *mut SlMatch) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Machine from table text (`<program>\t<output>\t<steps>` lines). With
/// `complete_family` every `H_k` is complete; otherwise levels `2..=k_max`
/// are built pipelines seeded by `seed`. `step_budget = 0` selects the
/// default.
#[no_mangle]
pub unsafe extern "C" fn sl_machine_new(
    table_text: *const c_char,
    k_max: u32,
    c: u64,
    seed: u64,
    complete_family: bool,
    step_budget: u64,
    out: *mut *mut SlMachine,
) -> SlStatus {
    guard(|| {
        let table = MachineTable::parse(text(table_text, "table_text")?)
            .map_err(|e| fail(SlStatus::ParseError, e))?;
        if out.is_null() {
            return Err(fail(SlStatus::NullArgument, "out is null"));
        }
        if c < 2 {
            return Err(fail(SlStatus::InvalidArgument, "c must be >= 2"));
        }
        let family = if complete_family {
            HkFamily::complete(c, k_max as usize)
        } else {
            let mut cfg = PipelineConfig::new(2, c).with_seed(seed);
            cfg.provider = ProviderKind::Random;
            HkFamily::build(&cfg, k_max as usize)
        }
        .map_err(|e| fail(SlStatus::BuildFailed, e))?;
        let budget = if step_budget == 0 { DEFAULT_STEP_BUDGET } else { step_budget };
        let m = StandardMachine::new(table, Arc::new(family), budget);
        *out = Box::into_raw(Box::new(SlMachine { inner: m }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sl_machine_free(m: *mut SlMachine) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Run `U(program)`. `halted` is false on divergence and `output` is then
/// set to null.
#[no_mangle]
pub unsafe extern "C" fn sl_machine_eval(
    m: *const SlMachine,
    program: *const c_char,
    halted: *mut bool,
    output: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let m = handle(m, "machine")?;
        let p = label(program, "program")?;
        if output.is_null() {
            return Err(fail(SlStatus::NullArgument, "output is null"));
        }
        match m.inner.eval_u(&p) {
            Eval::Halt { output: x, .. } => {
                put(halted, true)?;
                put_string(output, x.to_string())
            }
            Eval::Diverge => {
                put(halted, false)?;
                *output = ptr::null_mut();
                Ok(())
            }
        }
    })
}

/// `f(x)`, newline-separated.
#[no_mangle]
pub unsafe extern "C" fn sl_machine_shortlist(
    m: *const SlMachine,
    x: *const c_char,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let m = handle(m, "machine")?;
        let x = label(x, "x")?;
        let list = m
            .inner
            .f(&x)
            .map_err(|e| fail(SlStatus::InvalidArgument, e))?;
        put_string(out, list.iter().map(|p| format!("{p}\n")).collect())
    })
}

/// Brute-force complexity of `x` over programs up to `max_len` bits;
/// `-1` when none produces `x`.
#[no_mangle]
pub unsafe extern "C" fn sl_machine_complexity(
    m: *const SlMachine,
    x: *const c_char,
    max_len: u32,
    c_u: *mut i64,
) -> SlStatus {
    guard(|| {
        let m = handle(m, "machine")?;
        let x = label(x, "x")?;
        if max_len > 24 {
            return Err(fail(SlStatus::InvalidArgument, "max_len above 24"));
        }
        let r = m.inner.brute_force_c(&x, max_len as usize);
        put(c_u, r.c_u.map_or(-1, |v| v as i64))
    })
}

/// Per-string report as JSON; `max_len = 0` selects `|x| + 3`.
#[no_mangle]
pub unsafe extern "C" fn sl_machine_report_json(
    m: *const SlMachine,
    x: *const c_char,
    max_len: u32,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let m = handle(m, "machine")?;
        let x = label(x, "x")?;
        let max_len = if max_len == 0 { x.len() + 3 } else { max_len as usize };
        if max_len > 24 {
            return Err(fail(SlStatus::InvalidArgument, "max_len above 24"));
        }
        let r = shortlist_report(&m.inner, &x, max_len)
            .map_err(|e| fail(SlStatus::InvalidArgument, e))?;
        put_string(
            out,
            serde_json::to_string_pretty(&r).map_err(|e| fail(SlStatus::InvalidArgument, e))?,
        )
    })
}
