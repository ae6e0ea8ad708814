//! C interface to bpy-core.
//!
//! Every function returns a [`BpyStatus`]; results come back through out
//! pointers. Strings returned to C are owned by the caller and must be
//! released with [`bpy_string_free`]. After a failure,
//! [`bpy_last_error_message`] describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use bpy_core::freq::FrequencyTable;
use bpy_core::legacy::{LegacyError, MappingTable, Mode};
use bpy_core::morph::{AnalyzeOptions, Engine, FeatureBundle, Lexicon, MorphError, RuleSet};
use bpy_core::script::normalize;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpyStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownRoot = 4,
    IncompatibleFeatures = 5,
    Conversion = 6,
    Io = 7,
    Panic = 8,
}

/// Morphological engine handle.
pub struct BpyEngine(Engine);

/// Legacy-font mapping table handle.
pub struct BpyMappingTable(MappingTable);

/// Word frequency table handle.
pub struct BpyFreqTable(FrequencyTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(BpyStatus, String);

impl From<MorphError> for Failure {
    fn from(e: MorphError) -> Self {
        let status = match e {
            MorphError::Io { .. } => BpyStatus::Io,
            MorphError::UnknownRoot { .. } => BpyStatus::UnknownRoot,
            MorphError::IncompatibleFeatures(_) | MorphError::MissingSlot(_) | MorphError::InvalidCombination(_) => {
                BpyStatus::IncompatibleFeatures
            }
            _ => BpyStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

impl From<LegacyError> for Failure {
    fn from(e: LegacyError) -> Self {
        let status = match e {
            LegacyError::Io { .. } => BpyStatus::Io,
            LegacyError::DuplicatePattern { .. } | LegacyError::MalformedRule { .. } => BpyStatus::Parse,
            _ => BpyStatus::Conversion,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BpyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            BpyStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BpyStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BpyStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BpyStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(BpyStatus::NullArgument, format!("{name} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(BpyStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(BpyStatus::Conversion, "result contains NUL".into()))?;
    if out.is_null() {
        return Err(Failure(BpyStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(c.into_raw());
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bpy_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bpy_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// NFC-normalizes `text`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_normalize(text: *const c_char, out: *mut *mut c_char) -> BpyStatus {
    guard(|| put_string(out, normalize(str_arg(text, "text")?)))
}

/// Engine over the bundled rules and lexicon.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_engine_new(out: *mut *mut BpyEngine) -> BpyStatus {
    guard(|| put(out, Box::into_raw(Box::new(BpyEngine(Engine::shipped())))))
}

/// Engine over a rule file and a lexicon file.
///
/// # Safety
/// Both paths must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_engine_load(
    rules_path: *const c_char,
    lexicon_path: *const c_char,
    out: *mut *mut BpyEngine,
) -> BpyStatus {
    guard(|| {
        let rules = RuleSet::load(Path::new(str_arg(rules_path, "rules_path")?))?;
        let lexicon = Lexicon::load(Path::new(str_arg(lexicon_path, "lexicon_path")?))?;
        put(out, Box::into_raw(Box::new(BpyEngine(Engine::new(rules, lexicon)))))
    })
}

/// # Safety
/// `engine` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bpy_engine_free(engine: *mut BpyEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Generates a form, e.g. lemma `কর` with features `verb,imperative,slot=1`.
///
/// # Safety
/// `engine` must be a live handle; strings NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_generate(
    engine: *const BpyEngine,
    lemma: *const c_char,
    features: *const c_char,
    out: *mut *mut c_char,
) -> BpyStatus {
    guard(|| {
        let engine = ref_arg(engine, "engine")?;
        let features: FeatureBundle = str_arg(features, "features")?
            .parse()
            .map_err(|e: String| Failure(BpyStatus::Parse, e))?;
        let g = engine.0.generate_lemma(str_arg(lemma, "lemma")?, &features)?;
        put_string(out, g.surface)
    })
}

/// Analyzes a word or two-word form. The result has one line per analysis:
/// `surface TAB root TAB features TAB rule-ids`; empty if none.
///
/// # Safety
/// `engine` must be a live handle; `word` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_analyze(
    engine: *const BpyEngine,
    word: *const c_char,
    use_lexicon: bool,
    out: *mut *mut c_char,
) -> BpyStatus {
    guard(|| {
        let engine = ref_arg(engine, "engine")?;
        let found = engine
            .0
            .analyze_phrase(str_arg(word, "word")?, AnalyzeOptions { use_lexicon });
        let mut s = String::new();
        for a in found {
            s += &format!("{}\t{}\t{}\t{}\n", a.surface, a.root.lemma, a.features, a.suffix_trace.join("+"));
        }
        put_string(out, s)
    })
}

/// The bundled sample mapping table.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_table_sample(out: *mut *mut BpyMappingTable) -> BpyStatus {
    guard(|| put(out, Box::into_raw(Box::new(BpyMappingTable(MappingTable::sample())))))
}

/// # Safety
/// `path` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_table_load(path: *const c_char, out: *mut *mut BpyMappingTable) -> BpyStatus {
    guard(|| {
        let table = MappingTable::load(Path::new(str_arg(path, "path")?))?;
        put(out, Box::into_raw(Box::new(BpyMappingTable(table))))
    })
}

/// # Safety
/// `table` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bpy_table_free(table: *mut BpyMappingTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Converts `len` legacy bytes to Unicode text.
///
/// # Safety
/// `table` must be a live handle; `bytes` must point to `len` readable
/// bytes (may be NULL when `len` is 0); `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_convert(
    table: *const BpyMappingTable,
    bytes: *const u8,
    len: usize,
    lenient: bool,
    out: *mut *mut c_char,
) -> BpyStatus {
    guard(|| {
        let table = ref_arg(table, "table")?;
        let input: &[u8] = if len == 0 {
            &[]
        } else if bytes.is_null() {
            return Err(Failure(BpyStatus::NullArgument, "bytes is null".into()));
        } else {
            std::slice::from_raw_parts(bytes, len)
        };
        let mode = if lenient { Mode::Lenient } else { Mode::Strict };
        put_string(out, table.0.convert(input, mode)?.text)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_freq_new(out: *mut *mut BpyFreqTable) -> BpyStatus {
    guard(|| put(out, Box::into_raw(Box::new(BpyFreqTable(FrequencyTable::new())))))
}

/// # Safety
/// `table` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bpy_freq_free(table: *mut BpyFreqTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Tokenizes `text` and adds its words to `table`.
///
/// # Safety
/// `table` must be a live handle not used concurrently; `text` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bpy_freq_add_text(table: *mut BpyFreqTable, text: *const c_char) -> BpyStatus {
    guard(|| {
        let table = table
            .as_mut()
            .ok_or_else(|| Failure(BpyStatus::NullArgument, "table is null".into()))?;
        let text = normalize(str_arg(text, "text")?);
        table.0.merge_from(&FrequencyTable::count_text(&text));
        Ok(())
    })
}

/// Adds every count of `other` into `table`.
///
/// # Safety
/// Both must be live handles; `table` not used concurrently.
#[no_mangle]
pub unsafe extern "C" fn bpy_freq_merge(table: *mut BpyFreqTable, other: *const BpyFreqTable) -> BpyStatus {
    guard(|| {
        let other = ref_arg(other, "other")?;
        let table = table
            .as_mut()
            .ok_or_else(|| Failure(BpyStatus::NullArgument, "table is null".into()))?;
        table.0.merge_from(&other.0);
        Ok(())
    })
}

/// # Safety
/// `table` must be a live handle; out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_freq_totals(
    table: *const BpyFreqTable,
    total_tokens: *mut u64,
    type_count: *mut usize,
) -> BpyStatus {
    guard(|| {
        let table = ref_arg(table, "table")?;
        put(total_tokens, table.0.total_tokens())?;
        put(type_count, table.0.type_count())
    })
}

/// Ranked TSV export. `top` limits the rows; `SIZE_MAX` means all.
///
/// # Safety
/// `table` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bpy_freq_to_tsv(table: *const BpyFreqTable, top: usize, out: *mut *mut c_char) -> BpyStatus {
    guard(|| {
        let table = ref_arg(table, "table")?;
        let top = (top != usize::MAX).then_some(top);
        put_string(out, table.0.to_tsv(top))
    })
}
