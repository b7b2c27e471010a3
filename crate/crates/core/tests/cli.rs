use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_buchstaber"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or("").to_string()
}

const FOUR_BY_EIGHT: &str = "\
1 0 0 0 0 1 1 1
0 1 0 0 1 0 1 1
0 0 1 0 1 1 0 1
0 0 0 1 1 1 1 0
";

#[test]
fn srm_values() {
    let dir = tempfile::tempdir().unwrap();
    for (m, p, want) in [("8", "5", "4"), ("5", "5", "5"), ("12", "8", "4"), ("9", "7", "5")] {
        let o = run(&["srm", m, p], dir.path());
        assert_eq!(o.status.code(), Some(0), "srm {m} {p}");
        assert_eq!(first_line(&o), want, "srm {m} {p}");
    }
    // the bound engine alone leaves this cell open
    let o = run(&["srm", "12", "8", "--bounds-only"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(first_line(&o), "[4,5]");
}

#[test]
fn mkb_values_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["mkb", "2", "7"], dir.path());
    assert_eq!((o.status.code(), first_line(&o)), (Some(0), "21".into()));
    let o = run(&["mkb", "6", "9"], dir.path());
    assert_eq!((o.status.code(), first_line(&o)), (Some(2), "[13,17]".into()));

    let o = run(&["mkb", "4", "5", "--exact", "--certificate"], dir.path());
    assert_eq!((o.status.code(), first_line(&o)), (Some(0), "9".into()));
    assert!(stdout(&o).contains("certificate: "));
    assert!(dir.path().join("mkb-cache.json").exists());
    let again = run(&["mkb", "4", "5", "--exact"], dir.path());
    assert_eq!(first_line(&again), "9");
    assert!(stdout(&again).contains("provenance: cache"));

    let o = run(&["mkb", "5", "7", "--exact", "--search-only", "--no-cache"], dir.path());
    assert_eq!((o.status.code(), first_line(&o)), (Some(0), "11".into()));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, header: &str, body: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, format!("{header}\n{body}")).unwrap();
        path.to_string_lossy().into_owned()
    };
    let good = write("good.txt", "4 8 5", FOUR_BY_EIGHT);
    let o = run(&["verify", &good], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(first_line(&o).starts_with("ok:"));

    let bad = write("bad.txt", "4 8 4", FOUR_BY_EIGHT);
    let o = run(&["verify", &bad], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(first_line(&o).starts_with("violation: hyperplane u="));
    assert!(first_line(&o).ends_with("contains 4 columns (at most 3 allowed)"));

    let broken = write("broken.txt", "4 8 5", "1 0 2 0 0 1 1 1\n");
    let o = run(&["verify", &broken], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verify", "no-such-file"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["srm", "8"], dir.path()).status.code(), Some(1));
    assert_eq!(run(&["srm", "5", "6"], dir.path()).status.code(), Some(1));
    assert_eq!(run(&["mkb", "17", "3"], dir.path()).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(run(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["table", "mkb", "--k", "3", "--b", "0..5", "--no-cache"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().to_string())
        .collect();
    assert_eq!(values, ["0", "1", "4", "7", "8", "11"]);

    let o = run(&["table", "srm", "--m", "2..6", "--p", "2..3", "--format", "markdown"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("| m | p | value |"));
    assert_eq!(text.lines().count(), 2 + 9);

    let o = run(&["table", "srm", "--m", "6..5", "--p", "2..3"], dir.path());
    assert_eq!(stdout(&o), "m,p,value,lo,hi,provenance\n");
    assert_eq!(run(&["table", "srm", "--m", "2..6"], dir.path()).status.code(), Some(1));
}

#[test]
fn check_paper_window() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["check-paper", "--q", "0", "--m", "2..12", "--p", "2..6", "--time-limit", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.contains(" 0 MISMATCH"), "{last}");
}

#[test]
fn deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["mkb", "5", "6", "--exact", "--search-only", "--no-cache", "--certificate"];
    let a = run(&args, dir.path());
    let b = run(&args, dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}
