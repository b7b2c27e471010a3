use buchstaber::check::{check_entries, CheckConfig, CheckMode, Verdict};
use buchstaber::fixtures::{mk_fixture, srm_fixture, TableFixtureEntry};
use buchstaber::solver::SolveOptions;

// ranks above 5 have cells the search cannot close quickly
fn low_rank() -> Vec<TableFixtureEntry> {
    mk_fixture().into_iter().filter(|e| e.coords.0 <= 5).collect()
}

fn small(mode: CheckMode) -> CheckConfig {
    CheckConfig {
        mode,
        q_range: Some(0..=1),
        srm_window: Some((2..=14, 2..=6)),
    }
}

#[test]
fn published_tables_check_clean() {
    for mode in [CheckMode::BoundsOnly, CheckMode::Solver(SolveOptions::default())] {
        let rep = check_entries(&low_rank(), &srm_fixture(), &small(mode)).unwrap();
        assert_eq!(rep.count(Verdict::Mismatch), 0, "{}", rep.summary());
        assert!(rep.count(Verdict::Match) > 50);
    }
}

#[test]
fn corrupted_cells_are_flagged() {
    let mut mk = low_rank();
    // k = 3, R = 2 reads 7Q + 4; claim 7Q + 6 instead
    let cell = mk.iter_mut().find(|e| e.coords == (3, 2)).unwrap();
    cell.values = cell.values.iter().map(|v| v + 2).collect();
    let mut srm = srm_fixture();
    let cell = srm.iter_mut().find(|e| e.coords == (8, 5)).unwrap();
    cell.values = vec![6];

    let rep = check_entries(&mk, &srm, &small(CheckMode::Solver(SolveOptions::default()))).unwrap();
    let bad: Vec<_> = rep.mismatches().map(|c| (c.table.clone(), c.coords)).collect();
    assert!(bad.contains(&("mk".to_string(), (3, 2))), "{bad:?}");
    assert!(bad.contains(&("mk".to_string(), (3, 5))), "{bad:?}");
    assert!(bad.contains(&("srm".to_string(), (8, 5))), "{bad:?}");
    assert_eq!(bad.len(), 3);
}
