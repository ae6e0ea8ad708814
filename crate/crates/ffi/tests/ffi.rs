use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bpy_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    bpy_string_free(s);
    out
}

#[test]
fn generate_and_analyze() {
    unsafe {
        let mut engine = ptr::null_mut();
        assert_eq!(bpy_engine_new(&mut engine), BpyStatus::Ok);
        let lemma = CString::new("কর").unwrap();
        let features = CString::new("verb,imperative,slot=1").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(bpy_generate(engine, lemma.as_ptr(), features.as_ptr(), &mut out), BpyStatus::Ok);
        assert_eq!(take(out), "করিং");

        let word = CString::new("মোর").unwrap();
        assert_eq!(bpy_analyze(engine, word.as_ptr(), true, &mut out), BpyStatus::Ok);
        assert_eq!(take(out), "মোর\tমি\tpronoun,gen,cv=1\tC-GEN-1\n");

        let unknown = CString::new("নাই").unwrap();
        assert_eq!(
            bpy_generate(engine, unknown.as_ptr(), features.as_ptr(), &mut out),
            BpyStatus::UnknownRoot
        );
        let msg = CStr::from_ptr(bpy_last_error_message()).to_str().unwrap();
        assert!(msg.contains("নাই"));

        let bad = CString::new("verb,nonsense").unwrap();
        assert_eq!(bpy_generate(engine, lemma.as_ptr(), bad.as_ptr(), &mut out), BpyStatus::Parse);
        let missing = CString::new("verb,simple_past").unwrap();
        assert_eq!(
            bpy_generate(engine, lemma.as_ptr(), missing.as_ptr(), &mut out),
            BpyStatus::IncompatibleFeatures
        );
        bpy_engine_free(engine);
    }
}

#[test]
fn null_and_invalid_arguments() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(bpy_generate(ptr::null(), ptr::null(), ptr::null(), &mut out), BpyStatus::NullArgument);
        assert!(!bpy_last_error_message().is_null());
        let bad = [0xFFu8, 0];
        assert_eq!(bpy_normalize(bad.as_ptr().cast(), &mut out), BpyStatus::InvalidUtf8);
        let ok = CString::new("x").unwrap();
        assert_eq!(bpy_normalize(ok.as_ptr(), &mut out), BpyStatus::Ok);
        assert!(bpy_last_error_message().is_null());
        bpy_string_free(out);
        bpy_string_free(ptr::null_mut());
        bpy_engine_free(ptr::null_mut());
        let missing = CString::new("/nonexistent/table.tsv").unwrap();
        let mut table = ptr::null_mut();
        assert_eq!(bpy_table_load(missing.as_ptr(), &mut table), BpyStatus::Io);
    }
}

#[test]
fn convert_bytes() {
    unsafe {
        let mut table = ptr::null_mut();
        assert_eq!(bpy_table_sample(&mut table), BpyStatus::Ok);
        let mut out = ptr::null_mut();
        let input = b"ik enaM|";
        assert_eq!(bpy_convert(table, input.as_ptr(), input.len(), false, &mut out), BpyStatus::Ok);
        assert_eq!(take(out), "কি নোং।");
        let dangling = b"i";
        assert_eq!(bpy_convert(table, dangling.as_ptr(), 1, false, &mut out), BpyStatus::Conversion);
        assert_eq!(bpy_convert(table, ptr::null(), 0, false, &mut out), BpyStatus::Ok);
        assert_eq!(take(out), "");
        bpy_table_free(table);
    }
}

#[test]
fn frequency_tables() {
    unsafe {
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(bpy_freq_new(&mut a), BpyStatus::Ok);
        assert_eq!(bpy_freq_new(&mut b), BpyStatus::Ok);
        let t1 = CString::new("মানু বারো।").unwrap();
        let t2 = CString::new("বারো বারো").unwrap();
        assert_eq!(bpy_freq_add_text(a, t1.as_ptr()), BpyStatus::Ok);
        assert_eq!(bpy_freq_add_text(b, t2.as_ptr()), BpyStatus::Ok);
        assert_eq!(bpy_freq_merge(a, b), BpyStatus::Ok);
        let (mut tokens, mut types) = (0u64, 0usize);
        assert_eq!(bpy_freq_totals(a, &mut tokens, &mut types), BpyStatus::Ok);
        assert_eq!((tokens, types), (4, 2));
        let mut out = ptr::null_mut();
        assert_eq!(bpy_freq_to_tsv(a, 1, &mut out), BpyStatus::Ok);
        assert_eq!(take(out), "rank\tword\tcount\trelative_freq\n1\tবারো\t3\t0.750000\n");
        bpy_freq_free(a);
        bpy_freq_free(b);
    }
}

/// Compiles and runs a small C program against the generated header and
/// the static library.
#[test]
fn c_header_compiles_and_links() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include/bpy.h");
    assert!(header.exists());
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping link check");
        return;
    };
    // the test harness only needs the rlib, so build the archive explicitly
    let workspace = crate_dir.join("../..");
    let built = Command::new(env!("CARGO"))
        .args(["build", "-p", "bpy-ffi", "--lib"])
        .current_dir(&workspace)
        .status()
        .unwrap();
    assert!(built.success(), "cargo build of the static library failed");
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| workspace.join("target"));
    let lib = target.join("debug/libbpy_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "bpy.h"
int main(void) {
    BpyEngine *e = NULL;
    char *out = NULL;
    if (bpy_engine_new(&e) != BPY_STATUS_OK) return 1;
    if (bpy_generate(e, "\xe0\xa6\x95\xe0\xa6\xb0", "verb,simple_present,slot=1", &out) != BPY_STATUS_OK) return 2;
    printf("%s\n", out);
    bpy_string_free(out);
    if (bpy_generate(e, "x", "noun", &out) != BPY_STATUS_UNKNOWN_ROOT) return 3;
    if (bpy_last_error_message() == NULL) return 4;
    bpy_engine_free(e);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("smoke");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{:?}", run);
    assert_eq!(String::from_utf8(run.stdout).unwrap(), "করর\n");
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bpy-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
