use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bpy(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bpy"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_imperative() {
    let o = bpy(&["generate", "--root", "কর", "--features", "verb,imperative,slot=1"], b"");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "করিং\n");
}

#[test]
fn exit_codes() {
    let o = bpy(&["convert", "--table", "missing.tsv", "x"], b"");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.tsv"));

    assert_eq!(bpy(&["freq", "--bogus"], b"").status.code(), Some(2));
    assert_eq!(bpy(&["nosuch"], b"").status.code(), Some(2));
    assert_eq!(bpy(&["generate", "--root", "কর", "--features", "verb,nonsense"], b"").status.code(), Some(2));
    assert_eq!(bpy(&["generate", "--root", "নাই", "--features", "noun"], b"").status.code(), Some(1));
    // strict conversion of an unmapped byte
    assert_eq!(bpy(&["convert", "-"], b"\x01").status.code(), Some(1));
}

#[test]
fn unknown_flag_fails_before_io() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.txt");
    let o = bpy(&["convert", "--nope", "-o", out.to_str().unwrap(), "-"], b"k");
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn every_subcommand_has_help() {
    for sub in ["convert", "ingest", "stats", "tokenize", "sentences", "analyze", "generate", "paradigm", "freq"] {
        let o = bpy(&[sub, "--help"], b"");
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(stdout(&o).contains("Usage"), "{sub}");
    }
}

#[test]
fn freq_top_zero_is_header_only() {
    let o = bpy(&["freq", "--top", "0", fixture("ten_sentences.txt").to_str().unwrap()], b"");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "rank\tword\tcount\trelative_freq\n");
}

#[test]
fn pipeline_matches_file_path() {
    let legacy = fixture("legacy_1000.bin");
    let dir = tempfile::tempdir().unwrap();
    let converted = dir.path().join("converted.txt");
    let o = bpy(&["convert", legacy.to_str().unwrap(), "-o", converted.to_str().unwrap()], b"");
    assert!(o.status.success());
    let file_freq = bpy(&["freq", converted.to_str().unwrap()], b"");

    let piped = bpy(&["convert", "-"], &std::fs::read(&legacy).unwrap());
    let tokens = bpy(&["tokenize", "-"], &piped.stdout);
    let stream_freq = bpy(&["freq", "--tokens", "-"], &tokens.stdout);
    assert!(stream_freq.status.success());
    assert_eq!(stream_freq.stdout, file_freq.stdout);
    assert_eq!(piped.stdout, std::fs::read(&converted).unwrap());
    assert_eq!(piped.stdout, std::fs::read(fixture("legacy_1000.golden.txt")).unwrap());
}

#[test]
fn freq_over_directory_merges_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["doc_a.txt", "doc_b.txt", "doc_c.txt"] {
        std::fs::copy(fixture(name), dir.path().join(name)).unwrap();
    }
    let whole = bpy(&["freq", fixture("ten_sentences.txt").to_str().unwrap()], b"");
    let merged = bpy(&["freq", dir.path().to_str().unwrap()], b"");
    assert_eq!(stdout(&merged), stdout(&whole));
    let report = bpy(&["freq", "--export", "rank_report", "--top", "3", dir.path().to_str().unwrap()], b"");
    assert!(stdout(&report).starts_with("tokens 37  types 30\n"));
}

#[test]
fn analyze_formats() {
    let o = bpy(&["analyze", "মোরেল"], b"");
    assert_eq!(stdout(&o), "মোরেল\tমি\tpronoun,instr,cv=2\tC-ACC-2+C-INSTR-2\n");
    let o = bpy(&["analyze", "পেইলু"], b"");
    assert_eq!(stdout(&o), "পেইলু\tপা\tverb,simple_past,slot=1\tV-PAST-1;S-AI\n");
    let o = bpy(&["analyze", "-"], "ঘরে ঝঞ্ঝট".as_bytes());
    let out = stdout(&o);
    assert!(out.contains("ঘরে\tঘর\tnoun,loc,cv=2\tC-LOC-2\n"));
    assert!(out.ends_with("ঝঞ্ঝট\t-\t-\t-\n"));
    let o = bpy(&["analyze", "--no-lexicon", "ফুলে"], b"");
    assert!(stdout(&o).contains("ফুলে\tফুল\tnoun,loc,cv=2"));
}

#[test]
fn paradigm_tables() {
    let o = bpy(&["paradigm", "--person", "2", "--number", "sg"], b"");
    let out = stdout(&o);
    assert!(out.contains("তি\toblique\tতো\n"));
    assert!(out.contains("তি\tpronoun,acc,cv=2\tতোরে\n"));
    assert!(out.contains("তি\tpronoun,dat,cv=4\tতোরাং\n"));
    let o = bpy(&["paradigm", "--person", "3", "--gender", "fem"], b"");
    assert!(stdout(&o).starts_with("তেই\tdirect\tতেই\n"));
    assert_eq!(bpy(&["paradigm", "--person", "1", "--gender", "fem"], b"").status.code(), Some(1));
    let o = bpy(&["paradigm", "--root", "কর"], b"");
    assert!(stdout(&o).contains("কর\tverb,imperative,slot=1\tকরিং\n"));
}

#[test]
fn sentences_table() {
    let o = bpy(&["sentences", "-"], "মি ভাত খেইলু। তি\nঘরে আছ?".as_bytes());
    let expected = "1\t0\t35\t4\t3\tমি ভাত খেইলু।\n2\t36\t60\t4\t3\tতি ঘরে আছ?\n";
    assert_eq!(stdout(&o), expected);
}
