//! C ABI for the pretzel braid library: opaque handles, integer status
//! codes, and a thread-local last-error message.
//!
//! Every constructor has a matching `_free`; passing handles from other
//! sources is undefined behavior. Strings returned by this library must be
//! released with `pb_string_free`.

use libc::c_char;
use pretzel_braids::braid::BraidWord;
use pretzel_braids::cli::parse_pretzel;
use pretzel_braids::error::Error;
use pretzel_braids::invariants::{certify, Caps, CertifyOutcome};
use pretzel_braids::pretzel::{synthesize, CaseTag, Pretzel, Synthesis};
use pretzel_braids::render::render_svg;
use std::cell::RefCell;
use std::ffi::{CStr, CString};

/// Call status. Anything but `PB_STATUS_OK` leaves a message readable via
/// `pb_last_error_message`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    ResourceLimit = 5,
    Internal = 6,
}

/// Which synthesis template produced a word.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PbCase {
    Single = 0,
    Pair = 1,
    ThreeEvenCenter = 2,
    ThreeAllOdd = 3,
    EvenN = 4,
    OddNEvenEntry = 5,
    OddNAllOdd = 6,
}

impl From<CaseTag> for PbCase {
    fn from(tag: CaseTag) -> Self {
        match tag {
            CaseTag::Single => PbCase::Single,
            CaseTag::Pair => PbCase::Pair,
            CaseTag::ThreeEvenCenter => PbCase::ThreeEvenCenter,
            CaseTag::ThreeAllOdd => PbCase::ThreeAllOdd,
            CaseTag::EvenN => PbCase::EvenN,
            CaseTag::OddNEvenEntry => PbCase::OddNEvenEntry,
            CaseTag::OddNAllOdd => PbCase::OddNAllOdd,
        }
    }
}

/// Verdict of `pb_verify`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PbVerdict {
    Pass = 0,
    Fail = 1,
    /// The instance exceeds the oracle caps; nothing was checked.
    Skipped = 2,
}

/// Oracle resource limits; see `pb_caps_default` for the defaults.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct PbCaps {
    pub max_crossings: usize,
    pub max_strands: usize,
}

/// Result of `pb_verify`. `framing_exponent` is meaningful only when
/// `framing_found` is true.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct PbVerifyReport {
    pub verdict: PbVerdict,
    pub counts_match: bool,
    pub components_match: bool,
    pub components_pretzel: usize,
    pub components_closure: usize,
    pub framing_found: bool,
    pub framing_exponent: i64,
}

/// Opaque pretzel-link specification.
pub struct PbPretzel(Pretzel);

/// Opaque synthesis result: braid word, counts, and case.
pub struct PbSynthesis(Synthesis);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> PbStatus {
    match e {
        Error::Parse { .. } => PbStatus::ParseError,
        Error::CrossingCapExceeded { .. } | Error::StrandCapExceeded { .. } => {
            PbStatus::ResourceLimit
        }
        Error::Internal(_) => PbStatus::Internal,
        _ => PbStatus::InvalidArgument,
    }
}

fn fail(e: &Error) -> PbStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Default oracle caps: 22 state-sum crossings, 10 transfer strands.
#[no_mangle]
pub extern "C" fn pb_caps_default() -> PbCaps {
    let caps = Caps::default();
    PbCaps { max_crossings: caps.max_crossings, max_strands: caps.max_strands }
}

/// Parses a pretzel specification such as `"P(-2,3,7)"` or `"1 2 1"`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pb_pretzel_parse(
    text: *const c_char,
    out: *mut *mut PbPretzel,
) -> PbStatus {
    if text.is_null() || out.is_null() {
        set_error("null pointer");
        return PbStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        set_error("text is not valid UTF-8");
        return PbStatus::InvalidUtf8;
    };
    match parse_pretzel(text) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(PbPretzel(p)));
            PbStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Builds a pretzel from `len` nonzero entries.
///
/// # Safety
/// `entries` must point to `len` readable values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pb_pretzel_from_entries(
    entries: *const i64,
    len: usize,
    out: *mut *mut PbPretzel,
) -> PbStatus {
    if (entries.is_null() && len > 0) || out.is_null() {
        set_error("null pointer");
        return PbStatus::NullPointer;
    }
    let values = std::slice::from_raw_parts(entries, len).to_vec();
    match Pretzel::new(values) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(PbPretzel(p)));
            PbStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pb_pretzel_free(p: *mut PbPretzel) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pb_pretzel_len(p: *const PbPretzel) -> usize {
    if p.is_null() {
        return 0;
    }
    (*p).0.len()
}

/// Entry at `index`, or 0 when out of range.
///
/// # Safety
/// `p` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pb_pretzel_entry(p: *const PbPretzel, index: usize) -> i64 {
    if p.is_null() {
        return 0;
    }
    (*p).0.entries().get(index).copied().unwrap_or(0)
}

/// Synthesizes the braid word for a pretzel.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pb_synthesize(
    p: *const PbPretzel,
    out: *mut *mut PbSynthesis,
) -> PbStatus {
    if p.is_null() || out.is_null() {
        set_error("null pointer");
        return PbStatus::NullPointer;
    }
    match synthesize(&(*p).0) {
        Ok(s) => {
            *out = Box::into_raw(Box::new(PbSynthesis(s)));
            PbStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pb_synthesis_free(s: *mut PbSynthesis) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pb_synthesis_case(s: *const PbSynthesis) -> PbCase {
    (*s).0.case.into()
}

/// # Safety
/// `s` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pb_synthesis_letter_count(s: *const PbSynthesis) -> usize {
    (*s).0.word.len()
}

/// # Safety
/// `s` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pb_synthesis_strands(s: *const PbSynthesis) -> usize {
    (*s).0.word.strands()
}

/// Copies up to `cap` letters into `buf` and returns the full letter
/// count (call once with `cap = 0` to size the buffer).
///
/// # Safety
/// `s` must be a live handle; `buf` must hold `cap` writable values.
#[no_mangle]
pub unsafe extern "C" fn pb_synthesis_letters(
    s: *const PbSynthesis,
    buf: *mut i64,
    cap: usize,
) -> usize {
    let letters = (*s).0.word.letters();
    if !buf.is_null() {
        let n = letters.len().min(cap);
        std::ptr::copy_nonoverlapping(letters.as_ptr(), buf, n);
    }
    letters.len()
}

/// Runs the verification certificate for a pretzel under the given caps.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pb_verify(
    p: *const PbPretzel,
    caps: PbCaps,
    out: *mut PbVerifyReport,
) -> PbStatus {
    if p.is_null() || out.is_null() {
        set_error("null pointer");
        return PbStatus::NullPointer;
    }
    let caps = Caps { max_crossings: caps.max_crossings, max_strands: caps.max_strands };
    match certify(&(*p).0, &caps) {
        Ok(CertifyOutcome::Done(r)) => {
            *out = PbVerifyReport {
                verdict: if r.passed { PbVerdict::Pass } else { PbVerdict::Fail },
                counts_match: r.counts_match,
                components_match: r.components_match,
                components_pretzel: r.components_pretzel,
                components_closure: r.components_closure,
                framing_found: r.framing_exponent.is_some(),
                framing_exponent: r.framing_exponent.unwrap_or(0),
            };
            PbStatus::Ok
        }
        Ok(CertifyOutcome::Skipped { .. }) => {
            *out = PbVerifyReport {
                verdict: PbVerdict::Skipped,
                counts_match: false,
                components_match: false,
                components_pretzel: 0,
                components_closure: 0,
                framing_found: false,
                framing_exponent: 0,
            };
            PbStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Renders the synthesized word as an SVG document. Returns NULL on
/// failure; release the string with `pb_string_free`.
///
/// # Safety
/// `s` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pb_synthesis_svg(s: *const PbSynthesis) -> *mut c_char {
    if s.is_null() {
        set_error("null pointer");
        return std::ptr::null_mut();
    }
    let svg = render_svg(&(*s).0.word);
    match CString::new(svg) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            set_error("rendered SVG contained an interior NUL");
            std::ptr::null_mut()
        }
    }
}

/// The synthesized word in sequence form, e.g. `"(1,-2,1,-2)"`. Release
/// with `pb_string_free`.
///
/// # Safety
/// `s` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pb_synthesis_word_seq(s: *const PbSynthesis) -> *mut c_char {
    if s.is_null() {
        set_error("null pointer");
        return std::ptr::null_mut();
    }
    CString::new((*s).0.word.to_string()).map(CString::into_raw).unwrap_or(std::ptr::null_mut())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by this library and not freed already.
#[no_mangle]
pub unsafe extern "C" fn pb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Lets `BraidWord` participate in doc links above without exporting
/// anything extra through the C header.
#[allow(dead_code)]
fn _doc_anchor(_: &BraidWord) {}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    unsafe fn parse(text: &str) -> *mut PbPretzel {
        let c = CString::new(text).unwrap();
        let mut out = std::ptr::null_mut();
        assert_eq!(pb_pretzel_parse(c.as_ptr(), &mut out), PbStatus::Ok);
        out
    }

    #[test]
    fn parse_synthesize_and_free() {
        unsafe {
            let p = parse("P(1,2,1)");
            assert_eq!(pb_pretzel_len(p), 3);
            assert_eq!(pb_pretzel_entry(p, 1), 2);
            assert_eq!(pb_pretzel_entry(p, 9), 0);

            let mut s = std::ptr::null_mut();
            assert_eq!(pb_synthesize(p, &mut s), PbStatus::Ok);
            assert_eq!(pb_synthesis_case(s), PbCase::ThreeEvenCenter);
            assert_eq!(pb_synthesis_strands(s), 3);
            let n = pb_synthesis_letters(s, std::ptr::null_mut(), 0);
            assert_eq!(n, 4);
            let mut buf = vec![0i64; n];
            assert_eq!(pb_synthesis_letters(s, buf.as_mut_ptr(), n), 4);
            assert_eq!(buf, vec![1, -2, 1, -2]);

            let seq = pb_synthesis_word_seq(s);
            assert_eq!(CStr::from_ptr(seq).to_str().unwrap(), "(1,-2,1,-2)");
            pb_string_free(seq);

            pb_synthesis_free(s);
            pb_pretzel_free(p);
        }
    }

    #[test]
    fn parse_errors_set_message() {
        unsafe {
            let c = CString::new("P(1,0,3)").unwrap();
            let mut out = std::ptr::null_mut();
            assert_eq!(pb_pretzel_parse(c.as_ptr(), &mut out), PbStatus::ParseError);
            let msg = CStr::from_ptr(pb_last_error_message()).to_str().unwrap();
            assert!(msg.contains("zero entries unsupported"), "{msg}");
        }
    }

    #[test]
    fn from_entries_validates() {
        unsafe {
            let entries = [1i64, 0, 3];
            let mut out = std::ptr::null_mut();
            assert_eq!(
                pb_pretzel_from_entries(entries.as_ptr(), 3, &mut out),
                PbStatus::InvalidArgument
            );
            let good = [9i64, 5, 7, 11, 13];
            assert_eq!(pb_pretzel_from_entries(good.as_ptr(), 5, &mut out), PbStatus::Ok);
            let mut s = std::ptr::null_mut();
            assert_eq!(pb_synthesize(out, &mut s), PbStatus::Ok);
            assert_eq!(pb_synthesis_letter_count(s), 375);
            assert_eq!(pb_synthesis_strands(s), 22);
            pb_synthesis_free(s);
            pb_pretzel_free(out);
        }
    }

    #[test]
    fn verify_reports() {
        unsafe {
            let p = parse("P(2,2)");
            let mut report = std::mem::zeroed::<PbVerifyReport>();
            assert_eq!(pb_verify(p, pb_caps_default(), &mut report), PbStatus::Ok);
            assert_eq!(report.verdict, PbVerdict::Pass);
            assert!(report.framing_found);
            assert_eq!(report.components_pretzel, 2);
            assert_eq!(report.components_closure, 2);
            pb_pretzel_free(p);

            let big = parse("P(9,5,7,11,13)");
            let mut report = std::mem::zeroed::<PbVerifyReport>();
            assert_eq!(pb_verify(big, pb_caps_default(), &mut report), PbStatus::Ok);
            assert_eq!(report.verdict, PbVerdict::Skipped);
            pb_pretzel_free(big);
        }
    }

    #[test]
    fn svg_round_trip() {
        unsafe {
            let p = parse("P(1,1,1)");
            let mut s = std::ptr::null_mut();
            assert_eq!(pb_synthesize(p, &mut s), PbStatus::Ok);
            let svg = pb_synthesis_svg(s);
            assert!(!svg.is_null());
            let text = CStr::from_ptr(svg).to_str().unwrap();
            assert!(text.starts_with("<svg "));
            pb_string_free(svg);
            pb_synthesis_free(s);
            pb_pretzel_free(p);
        }
    }

    #[test]
    fn null_pointers_are_rejected() {
        unsafe {
            let mut out = std::ptr::null_mut();
            assert_eq!(pb_pretzel_parse(std::ptr::null(), &mut out), PbStatus::NullPointer);
            let c = CString::new("P(1,1,1)").unwrap();
            assert_eq!(
                pb_pretzel_parse(c.as_ptr(), std::ptr::null_mut()),
                PbStatus::NullPointer
            );
        }
    }
}
