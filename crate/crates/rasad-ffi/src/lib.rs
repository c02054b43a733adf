//! C ABI for the rasad library.
//!
//! All functions are panic-safe. Strings cross the boundary as
//! NUL-terminated UTF-8; strings returned through out-parameters are
//! owned by the caller and must be released with [`rasad_string_free`].
//! Fallible calls return a [`RasadStatus`]; on failure a thread-local
//! message is readable through [`rasad_last_error`].

use rasad::classify::{classify_text, Label, SecondPassLabel};
use rasad::isri::IsriStemmer;
use rasad::lexicon::{Category, CountPolicy, StemLexicon};
use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

/// Status codes returned by fallible calls.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RasadStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    LexiconError = 3,
    Panic = 4,
}

/// First-pass labels. Values are stable ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RasadLabel {
    Violence = 0,
    Theological = 1,
    Sectarian = 2,
    Names = 3,
    Other = 4,
    None = 5,
}

impl From<Label> for RasadLabel {
    fn from(l: Label) -> Self {
        match l {
            Label::Violence => RasadLabel::Violence,
            Label::Theological => RasadLabel::Theological,
            Label::Sectarian => RasadLabel::Sectarian,
            Label::Names => RasadLabel::Names,
            Label::Other => RasadLabel::Other,
            Label::None => RasadLabel::None,
        }
    }
}

/// Second-pass codes for [`rasad_classify`]'s `second_pass_out`:
/// -1 none, 0 Names+Violence, 1 Names+Theological, 2 Names+Sectarian,
/// 3 Names+Other.
pub const RASAD_SECOND_PASS_NONE: c_int = -1;

fn second_pass_code(sp: Option<SecondPassLabel>) -> c_int {
    match sp {
        None => RASAD_SECOND_PASS_NONE,
        Some(l) => l.index() as c_int,
    }
}

enum LexiconHolder {
    Builtin(&'static StemLexicon),
    Owned(Box<StemLexicon>),
}

/// Opaque engine handle: a loaded lexicon plus the stemmer.
pub struct RasadEngine {
    lexicon: LexiconHolder,
    stemmer: IsriStemmer,
}

impl RasadEngine {
    fn lexicon(&self) -> &StemLexicon {
        match &self.lexicon {
            LexiconHolder::Builtin(l) => l,
            LexiconHolder::Owned(l) => l,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// Message for the most recent failure on this thread. Valid until the
/// next failing call; never NULL.
#[no_mangle]
pub extern "C" fn rasad_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rasad_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, RasadStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(RasadStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        RasadStatus::InvalidUtf8
    })
}

fn guarded<F: FnOnce() -> RasadStatus>(body: F) -> RasadStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            RasadStatus::Panic
        }
    }
}

/// New engine with the built-in lexicon. Never fails; free with
/// [`rasad_engine_free`].
#[no_mangle]
pub extern "C" fn rasad_engine_new() -> *mut RasadEngine {
    Box::into_raw(Box::new(RasadEngine {
        lexicon: LexiconHolder::Builtin(StemLexicon::builtin()),
        stemmer: IsriStemmer::new(),
    }))
}

/// New engine from a lexicon JSON file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn rasad_engine_from_file(
    path: *const c_char,
    out: *mut *mut RasadEngine,
) -> RasadStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer");
            return RasadStatus::NullPointer;
        }
        let path = match unsafe { read_utf8(path) } {
            Ok(p) => p,
            Err(status) => return status,
        };
        match StemLexicon::from_file(Path::new(path)) {
            Ok(lexicon) => {
                let engine = RasadEngine {
                    lexicon: LexiconHolder::Owned(Box::new(lexicon)),
                    stemmer: IsriStemmer::new(),
                };
                unsafe { *out = Box::into_raw(Box::new(engine)) };
                RasadStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                RasadStatus::LexiconError
            }
        }
    })
}

/// Release an engine. NULL is a no-op.
///
/// # Safety
/// `engine` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rasad_engine_free(engine: *mut RasadEngine) {
    if !engine.is_null() {
        drop(unsafe { Box::from_raw(engine) });
    }
}

/// Stem one normalized token. The result lands in `*out` as a
/// caller-owned string.
///
/// # Safety
/// `word` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rasad_stem(word: *const c_char, out: *mut *mut c_char) -> RasadStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer");
            return RasadStatus::NullPointer;
        }
        let word = match unsafe { read_utf8(word) } {
            Ok(w) => w,
            Err(status) => return status,
        };
        let stem = IsriStemmer::new().stem(word);
        let stem = CString::new(stem.replace('\0', "")).unwrap_or_default();
        unsafe { *out = stem.into_raw() };
        RasadStatus::Ok
    })
}

/// Whether `word` is in the engine's stop list: 1 yes, 0 no, -1 error.
///
/// # Safety
/// `engine` and `word` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rasad_is_stop(engine: *const RasadEngine, word: *const c_char) -> c_int {
    let mut hit: c_int = -1;
    let status = guarded(|| {
        if engine.is_null() {
            set_error("null engine");
            return RasadStatus::NullPointer;
        }
        let word = match unsafe { read_utf8(word) } {
            Ok(w) => w,
            Err(status) => return status,
        };
        hit = c_int::from(unsafe { &*engine }.lexicon().is_stop(word));
        RasadStatus::Ok
    });
    if status == RasadStatus::Ok {
        hit
    } else {
        -1
    }
}

/// Classify one tweet text with occurrence counting. Writes the four
/// category counts (Violence, Theological, Sectarian, Names) into
/// `counts_out[4]`, the first-pass label into `label_out`, and the
/// second-pass code into `second_pass_out`.
///
/// # Safety
/// All pointers must be valid; `counts_out` must have room for 4 values.
#[no_mangle]
pub unsafe extern "C" fn rasad_classify(
    engine: *const RasadEngine,
    text: *const c_char,
    counts_out: *mut u32,
    label_out: *mut RasadLabel,
    second_pass_out: *mut c_int,
) -> RasadStatus {
    guarded(|| {
        if engine.is_null()
            || counts_out.is_null()
            || label_out.is_null()
            || second_pass_out.is_null()
        {
            set_error("null pointer argument");
            return RasadStatus::NullPointer;
        }
        let text = match unsafe { read_utf8(text) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let engine = unsafe { &*engine };
        let (counts, label, sp) = classify_text(
            text,
            engine.lexicon(),
            &engine.stemmer,
            CountPolicy::Occurrence,
        );
        for (i, cat) in Category::ALL.iter().enumerate() {
            unsafe { *counts_out.add(i) = counts.get(*cat) };
        }
        unsafe {
            *label_out = label.into();
            *second_pass_out = second_pass_code(sp);
        }
        RasadStatus::Ok
    })
}

/// Release a string produced by this library. NULL is a no-op.
///
/// # Safety
/// `s` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rasad_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Convenience: stem and classify in one call without a handle, using
/// the built-in lexicon. Equivalent to `rasad_engine_new` + classify.
///
/// # Safety
/// See [`rasad_classify`].
#[no_mangle]
pub unsafe extern "C" fn rasad_classify_builtin(
    text: *const c_char,
    counts_out: *mut u32,
    label_out: *mut RasadLabel,
    second_pass_out: *mut c_int,
) -> RasadStatus {
    let engine = RasadEngine {
        lexicon: LexiconHolder::Builtin(StemLexicon::builtin()),
        stemmer: IsriStemmer::new(),
    };
    unsafe { rasad_classify(&engine, text, counts_out, label_out, second_pass_out) }
}

#[allow(unused)]
fn assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<RasadEngine>();
}
