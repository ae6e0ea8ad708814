use std::fs;
use std::path::{Path, PathBuf};

use bpy_core::store::{CorpusStore, IngestOutcome, Manifest, Source, StoreError, Totals, MANIFEST};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn added(o: IngestOutcome) -> bpy_core::store::DocumentRecord {
    match o {
        IngestOutcome::Added { record, .. } => record,
        other => panic!("expected a new document, got {other:?}"),
    }
}

#[test]
fn three_documents() {
    let dir = tempfile::tempdir().unwrap();
    let mut store = CorpusStore::open(dir.path()).unwrap();
    let a = added(store.ingest(&fixture("doc_a.txt"), Source::Wikipedia, "a").unwrap());
    let b = added(store.ingest(&fixture("doc_b.txt"), Source::Wikipedia, "b").unwrap());
    let c = added(store.ingest(&fixture("doc_c.txt"), Source::LegacyFont, "c").unwrap());
    assert_eq!((a.tokens, a.sentences, a.types), (16, 4, 14));
    assert_eq!((b.tokens, b.sentences, b.types), (11, 3, 11));
    assert_eq!((c.tokens, c.sentences, c.types), (10, 3, 10));

    let report = store.stats(true).unwrap();
    assert_eq!(
        report.totals,
        Totals { documents: 3, tokens: 37, sentences: 10, types: 35 }
    );
    assert_eq!(report.distinct_types, Some(30));
    assert_eq!(
        report.by_source[&Source::Wikipedia],
        Totals { documents: 2, tokens: 27, sentences: 7, types: 25 }
    );
    assert_eq!(report.by_source[&Source::LegacyFont].tokens, 10);
    assert!(!report.by_source.contains_key(&Source::Other));
    assert_eq!(
        report.to_string(),
        "scope\tdocuments\ttokens\tsentences\ttypes\n\
         total\t3\t37\t10\t35\n\
         wikipedia\t2\t27\t7\t25\n\
         legacy_font\t1\t10\t3\t10\n\
         distinct_types\t30\n"
    );
}

#[test]
fn manifest_survives_reopen_and_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let mut store = CorpusStore::open(dir.path()).unwrap();
    store.ingest(&fixture("doc_a.txt"), Source::Other, "first").unwrap();
    store.ingest(&fixture("doc_b.txt"), Source::Wikipedia, "second").unwrap();

    let on_disk = fs::read_to_string(dir.path().join(MANIFEST)).unwrap();
    assert_eq!(on_disk.lines().count(), 3);
    let parsed = Manifest::parse(&on_disk).unwrap();
    assert_eq!(&parsed, store.manifest());
    assert_eq!(parsed.to_tsv(), on_disk);

    let reopened = CorpusStore::open(dir.path()).unwrap();
    assert_eq!(reopened.manifest(), store.manifest());
    for r in &parsed.records {
        assert!(dir.path().join(&r.path).is_file());
        assert_eq!(r.ingested_at.timestamp_subsec_nanos(), 0);
    }
}

#[test]
fn duplicate_leaves_manifest_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let mut store = CorpusStore::open(dir.path()).unwrap();
    let a = added(store.ingest(&fixture("doc_a.txt"), Source::Wikipedia, "a").unwrap());
    let before = fs::read(dir.path().join(MANIFEST)).unwrap();
    let again = store.ingest(&fixture("doc_a.txt"), Source::Other, "renamed").unwrap();
    assert_eq!(again, IngestOutcome::DuplicateOf(a.id));
    assert_eq!(fs::read(dir.path().join(MANIFEST)).unwrap(), before);
}

#[test]
fn empty_store_and_empty_document() {
    let dir = tempfile::tempdir().unwrap();
    let mut store = CorpusStore::open(dir.path()).unwrap();
    let report = store.stats(true).unwrap();
    assert_eq!(report.totals, Totals::default());
    assert_eq!(report.distinct_types, Some(0));

    let out = store.ingest_bytes(b"  \n", Source::Other, "blank").unwrap();
    assert!(matches!(out, IngestOutcome::Added { empty: true, .. }));
    assert_eq!(store.stats(true).unwrap().totals.documents, 1);
}

#[test]
fn invalid_utf8_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, b"\xff\xfe").unwrap();
    let mut store = CorpusStore::open(&dir.path().join("store")).unwrap();
    match store.ingest(&bad, Source::Other, "bad") {
        Err(StoreError::Encoding { path, .. }) => assert_eq!(path, bad),
        other => panic!("{other:?}"),
    }
    assert!(store.manifest().records.is_empty());
}

#[test]
fn malformed_manifest_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join(MANIFEST), "#ID\tSOURCE\tTITLE\tPATH\tTOKENS\tSENTENCES\tTYPES\tTIMESTAMP\nnope\n").unwrap();
    assert!(matches!(
        CorpusStore::open(dir.path()),
        Err(StoreError::MalformedManifest { line: 2, .. })
    ));
}
