use std::fs;
use std::path::Path;
use std::sync::Arc;

use qzm::chiral_fock::{Content, DiskCache, EpsilonConvention, FockConfig, FockModule};
use qzm::commands::{cmd_cache, CacheAction};
use qzm::qalgebra::QAlgebra;
use qzm::report::{Outcome, RunConfig};
use qzm::scalarfield::Field;

fn cached_module(dir: &Path, conv: EpsilonConvention) -> FockModule {
    let f = Field::root_of_unity(4).unwrap();
    FockModule::new(3, &f, FockConfig { budget: 100_000, convention: conv })
        .unwrap()
        .with_disk_cache(DiskCache::open(dir).unwrap())
}

fn records(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().to_string())
        .filter(|n| n.ends_with(".json"))
        .collect();
    v.sort();
    v
}

const TOP: [u32; 3] = [2, 1, 0];

#[test]
fn empty_cache_lists_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig { cache_dir: Some(dir.path().to_path_buf()), ..RunConfig::default() };
    assert!(cmd_cache(&cfg, CacheAction::List).unwrap().checks.is_empty());
    assert!(DiskCache::open(dir.path()).unwrap().list().unwrap().is_empty());
}

#[test]
fn round_trip_reproduces_the_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let top = Content(TOP.to_vec());
    let m1 = cached_module(dir.path(), EpsilonConvention::default());
    let q1 = m1.quotient(&top).unwrap();
    let files = records(dir.path());
    assert!(!files.is_empty());
    let index = fs::read_to_string(dir.path().join("index.tsv")).unwrap();
    assert_eq!(index.lines().count(), files.len());
    assert!(index.contains("content=2,1,0"));

    let m2 = cached_module(dir.path(), EpsilonConvention::default());
    let q2 = m2.quotient(&top).unwrap();
    assert_eq!(q1.basis_words(), q2.basis_words());
    for col in 0..q1.spanning_words().len() {
        assert_eq!(q1.reduction(col), q2.reduction(col));
    }
    // nothing new was written and everything validates
    assert_eq!(records(dir.path()), files);
    let st = DiskCache::open(dir.path()).unwrap().validate(EpsilonConvention::default(), 100_000).unwrap();
    assert!(st.iter().all(|s| s.status == "ok"), "{st:?}");

    // F' computed through a cache agrees with a fresh module
    let f = Field::root_of_unity(4).unwrap();
    let fresh = Arc::new(FockModule::new(3, &f, FockConfig::default()).unwrap());
    let a = QAlgebra::new(Arc::new(cached_module(dir.path(), EpsilonConvention::default())), 4).unwrap().fprime().unwrap();
    let b = QAlgebra::new(fresh, 4).unwrap().fprime().unwrap();
    assert_eq!(a.dimension, b.dimension);
}

#[test]
fn convention_mismatch_is_quarantined() {
    let dir = tempfile::tempdir().unwrap();
    let top = Content(TOP.to_vec());
    let d_other = cached_module(dir.path(), EpsilonConvention::NegQPower).dimension(&top).unwrap();
    let m = cached_module(dir.path(), EpsilonConvention::NegQInversePower);
    let d = m.dimension(&top).unwrap();
    assert_eq!(d, d_other);
    let qdir = dir.path().join("quarantine");
    let reasons: Vec<String> = fs::read_dir(&qdir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "reason"))
        .map(|p| fs::read_to_string(p).unwrap())
        .collect();
    assert!(!reasons.is_empty());
    assert!(reasons.iter().all(|r| r.contains("epsilon convention")));
    // the rebuilt records carry the requested tag
    let st = DiskCache::open(dir.path()).unwrap().validate(EpsilonConvention::NegQInversePower, 100_000).unwrap();
    assert!(st.iter().all(|s| s.status == "ok"));
}

#[test]
fn corrupt_and_stale_records() {
    let dir = tempfile::tempdir().unwrap();
    let top = Content(TOP.to_vec());
    let expected = cached_module(dir.path(), EpsilonConvention::default()).dimension(&top).unwrap();
    let files = records(dir.path());
    assert!(files.len() >= 2);

    // garbage in one record: loading quarantines it and recomputes
    fs::write(dir.path().join(&files[0]), b"{not json").unwrap();
    let mut rec: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join(&files[1])).unwrap()).unwrap();
    // a wrong basis in another record is caught by validation only
    rec["basis"] = serde_json::json!([]);
    fs::write(dir.path().join(&files[1]), serde_json::to_vec(&rec).unwrap()).unwrap();

    let cfg = RunConfig { n: 3, k: 1, cache_dir: Some(dir.path().to_path_buf()), ..RunConfig::default() };
    let rep = cmd_cache(&cfg, CacheAction::Validate).unwrap();
    let bad: Vec<_> = rep.checks.iter().filter(|c| c.result == Outcome::Fail).collect();
    assert_eq!(bad.len(), 2, "{:?}", rep.checks);
    assert!(bad.iter().any(|c| c.params["status"].as_str().unwrap().contains("corrupt")));
    assert!(bad.iter().any(|c| c.params["status"].as_str().unwrap().contains("stale")));
    assert!(dir.path().join("quarantine").join(&files[0]).exists());

    assert_eq!(cached_module(dir.path(), EpsilonConvention::default()).dimension(&top).unwrap(), expected);

    let n = records(dir.path()).len();
    let rep = cmd_cache(&cfg, CacheAction::Purge).unwrap();
    assert_eq!(rep.checks[0].params["removed"], serde_json::json!(n));
    assert!(records(dir.path()).is_empty());
    assert!(!dir.path().join("quarantine").exists());
}
