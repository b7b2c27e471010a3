use std::time::Instant;

use buchstaber::cache::Cache;
use buchstaber::solver::{SolveOptions, SolveStatus};

#[test]
fn warm_cache_answers_fast_and_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let opts = SolveOptions::search_only();

    let (mut cold, _) = Cache::load(&path).unwrap();
    let t = Instant::now();
    let first = cold.solve_mk(5, 7, &opts).unwrap();
    let cold_time = t.elapsed();
    assert_eq!((first.value, first.status), (11, SolveStatus::Exact));
    cold.store(&path).unwrap();

    let (mut warm, warnings) = Cache::load(&path).unwrap();
    assert!(warnings.is_empty());
    let t = Instant::now();
    let second = warm.solve_mk(5, 7, &opts).unwrap();
    let warm_time = t.elapsed();
    assert_eq!(second.provenance, "cache");
    assert_eq!((second.value, second.upper), (first.value, first.upper));
    assert_eq!(second.certificate, first.certificate);
    assert!(warm_time < cold_time, "{warm_time:?} vs {cold_time:?}");
    assert!(warm_time.as_millis() < 50);
}

#[test]
fn intervals_are_cached_but_not_trusted_as_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let mut c = Cache::new();
    let tiny = SolveOptions::search_only().with_budget(10);
    let r = c.solve_mk(6, 11, &tiny).unwrap();
    assert_eq!(r.status, SolveStatus::LowerBoundOnly);
    c.store(&path).unwrap();
    let (mut back, _) = Cache::load(&path).unwrap();
    let rec = back.get(6, 11).unwrap();
    assert!(!rec.exact && rec.lo < rec.hi);
    // an inexact record does not short-circuit a later solve
    let again = back.solve_mk(6, 11, &tiny).unwrap();
    assert_ne!(again.provenance, "cache");
}
