use std::ffi::{c_char, CStr, CString};
use std::ptr;

use shortlist_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    sl_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(sl_last_error()).to_str().unwrap().to_string()
}

#[test]
fn pipeline_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sl_pipeline_build(3, 2, 6, 42, &mut p), SlStatus::Ok);
        let (mut pass, mut definitive) = (false, false);
        assert_eq!(sl_pipeline_certificate(p, &mut pass, &mut definitive), SlStatus::Ok);
        assert!(pass && definitive);

        let mut json = ptr::null_mut();
        assert_eq!(sl_pipeline_manifest_json(p, &mut json), SlStatus::Ok);
        let manifest: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(manifest["subset_size"], 2);

        // Rebuilding from the pinned config gives the same neighbors.
        let cfg = c(&manifest["config"].to_string());
        let mut q = ptr::null_mut();
        assert_eq!(sl_pipeline_build_json(cfg.as_ptr(), &mut q), SlStatus::Ok);
        let x = c("0110");
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(sl_pipeline_neighbors(p, x.as_ptr(), &mut a), SlStatus::Ok);
        assert_eq!(sl_pipeline_neighbors(q, x.as_ptr(), &mut b), SlStatus::Ok);
        let na = take(a);
        assert_eq!(na, take(b));
        assert!(na.lines().all(|l| l.len() == 4));
        sl_pipeline_free(q);
        sl_pipeline_free(p);
    }
}

#[test]
fn matching_outlives_pipeline() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sl_pipeline_build(2, 2, 0, 1, &mut p), SlStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(sl_match_new(p, &mut s), SlStatus::Ok);
        sl_pipeline_free(p);
        let mut outcome = SlOutcome::Discarded;
        let mut right = ptr::null_mut();
        let x = c("01");
        assert_eq!(sl_match_request(s, x.as_ptr(), &mut outcome, &mut right), SlStatus::Ok);
        assert_eq!(outcome, SlOutcome::Matched);
        assert_eq!(take(right).len(), 3);
        assert_eq!(sl_match_request(s, x.as_ptr(), &mut outcome, &mut right), SlStatus::Ok);
        assert_eq!(outcome, SlOutcome::DuplicateIgnored);
        assert!(right.is_null());
        let bad = c("11111");
        assert_eq!(
            sl_match_request(s, bad.as_ptr(), &mut outcome, ptr::null_mut()),
            SlStatus::OutsideUniverse
        );
        assert!(last_error().contains("11111"));
        let (mut m, mut d) = (0, 0);
        assert_eq!(sl_match_counts(s, &mut m, &mut d), SlStatus::Ok);
        assert_eq!((m, d), (1, 0));
        sl_match_free(s);
    }
}

#[test]
fn machine_calls() {
    unsafe {
        let table = c("01\t11010\t3\n");
        let mut m = ptr::null_mut();
        assert_eq!(sl_machine_new(table.as_ptr(), 4, 2, 0, true, 0, &mut m), SlStatus::Ok);
        let mut halted = false;
        let mut out = ptr::null_mut();
        let prog = c("001");
        assert_eq!(sl_machine_eval(m, prog.as_ptr(), &mut halted, &mut out), SlStatus::Ok);
        assert!(halted);
        assert_eq!(take(out), "11010");
        let prog = c("0");
        assert_eq!(sl_machine_eval(m, prog.as_ptr(), &mut halted, &mut out), SlStatus::Ok);
        assert!(!halted && out.is_null());

        let x = c("11010");
        let mut cu = 0;
        assert_eq!(sl_machine_complexity(m, x.as_ptr(), 8, &mut cu), SlStatus::Ok);
        assert_eq!(cu, 3);
        let mut list = ptr::null_mut();
        assert_eq!(sl_machine_shortlist(m, x.as_ptr(), &mut list), SlStatus::Ok);
        assert_eq!(take(list).lines().next(), Some("10011010"));
        let mut report = ptr::null_mut();
        assert_eq!(sl_machine_report_json(m, x.as_ptr(), 0, &mut report), SlStatus::Ok);
        let r: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(r["C_U"], 3);
        let empty = c("");
        assert_eq!(sl_machine_shortlist(m, empty.as_ptr(), &mut list), SlStatus::InvalidArgument);
        assert!(last_error().contains("empty string"));
        sl_machine_free(m);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sl_pipeline_build(3, 1, 0, 0, &mut p), SlStatus::InvalidArgument);
        assert!(p.is_null());
        assert!(last_error().contains("c must be"));
        assert_eq!(sl_pipeline_build(3, 2, 0, 0, ptr::null_mut()), SlStatus::NullArgument);
        let junk = c("{");
        assert_eq!(sl_pipeline_build_json(junk.as_ptr(), &mut p), SlStatus::ParseError);
        let bad_table = c("01\t1\n");
        let mut m = ptr::null_mut();
        assert_eq!(
            sl_machine_new(bad_table.as_ptr(), 2, 2, 0, true, 0, &mut m),
            SlStatus::ParseError
        );
        assert!(last_error().contains("line 1"));
        assert_eq!(sl_machine_new(ptr::null(), 2, 2, 0, true, 0, &mut m), SlStatus::NullArgument);
        let mut out = ptr::null_mut();
        let x = c("01x");
        assert_eq!(sl_pipeline_neighbors(ptr::null(), x.as_ptr(), &mut out), SlStatus::NullArgument);
        // Success clears the message.
        assert_eq!(sl_pipeline_build(2, 2, 0, 0, &mut p), SlStatus::Ok);
        assert_eq!(last_error(), "");
        sl_pipeline_free(p);
        sl_pipeline_free(ptr::null_mut());
        sl_string_free(ptr::null_mut());
        assert!(!CStr::from_ptr(sl_version()).to_bytes().is_empty());
    }
}
