use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use buchstaber::cache::{Cache, DEFAULT_CACHE_PATH};
use buchstaber::check::{check_paper, CheckConfig, CheckMode, Verdict};
use buchstaber::closed_forms::{bounds, srm_bounds};
use buchstaber::realizability::{find_violation, format_matrix_text, parse_matrix_text, realizes_naive};
use buchstaber::solver::{solve_srm, SolveOptions};
use buchstaber::table::{mk_rows, render, srm_rows, TableFormat};

const EXIT_EXACT: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INTERVAL: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

/// Bounds, exact values and certificates for s_R(m, p) and m_k(b).
#[derive(Parser)]
#[command(name = "buchstaber", version)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Flags {
    /// Search node budget per solve.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,
    /// Wall-clock limit per search, in seconds.
    #[arg(long, global = true)]
    time_limit: Option<f64>,
    /// Plain search: no parity, no symmetry, no warm start, no formulas.
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true)]
    no_symmetry: bool,
    #[arg(long, global = true)]
    no_parity: bool,
    /// Make the search prove every value instead of taking proven formulas.
    #[arg(long, global = true)]
    search_only: bool,
    /// Use only the bound engine, never search.
    #[arg(long, global = true)]
    bounds_only: bool,
    /// Split the search across threads (certificates may then vary).
    #[arg(long, global = true)]
    parallel: bool,
    /// Print a certificate with the result.
    #[arg(long, global = true)]
    certificate: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Result cache for exact m_k(b) solves.
    #[arg(long, global = true, default_value = DEFAULT_CACHE_PATH)]
    cache: PathBuf,
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Srm,
    Mkb,
}

#[derive(Subcommand)]
enum Cmd {
    /// s_R(m, p): the largest k with a k×m matrix whose every p columns span.
    Srm { m: u64, p: u64 },
    /// Bounds on m_k(b); --exact runs the solver.
    Mkb {
        k: u32,
        b: u64,
        #[arg(long)]
        exact: bool,
    },
    /// Check that a matrix file satisfies its declared p.
    Verify { path: PathBuf },
    /// Emit a table of s_R (--m, --p) or m_k (--k, --b).
    Table {
        kind: TableKind,
        #[arg(long, value_parser = parse_range)]
        m: Option<RangeInclusive<u64>>,
        #[arg(long, value_parser = parse_range)]
        p: Option<RangeInclusive<u64>>,
        #[arg(long, value_parser = parse_range)]
        k: Option<RangeInclusive<u64>>,
        #[arg(long, value_parser = parse_range)]
        b: Option<RangeInclusive<u64>>,
    },
    /// Recompute the published tables and report disagreements. Each search
    /// stops after 10 s unless --time-limit says otherwise.
    CheckPaper {
        /// Quotients Q checked in the m_k table.
        #[arg(long, value_parser = parse_range, default_value = "0..2")]
        q: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_range, default_value = "2..40")]
        m: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_range, default_value = "2..18")]
        p: RangeInclusive<u64>,
        #[arg(long)]
        skip_mk: bool,
        #[arg(long)]
        skip_srm: bool,
        /// Print every cell, not only the interesting ones.
        #[arg(long)]
        verbose: bool,
    },
}

const CHECK_TIME_LIMIT_MS: u64 = 10_000;

/// `a..b` (inclusive) or a single number.
fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad number {t:?}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

impl Flags {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            node_budget: self.budget,
            use_parity_pruning: !self.no_parity,
            use_symmetry: !self.no_symmetry,
            oracle_mode: self.oracle,
            deterministic: !self.parallel,
            use_closed_forms: !self.search_only,
            time_limit_ms: self.time_limit.map(|s| (s * 1000.0) as u64),
        }
        .normalized()
    }

    fn mode(&self) -> CheckMode {
        if self.bounds_only {
            CheckMode::BoundsOnly
        } else {
            CheckMode::Solver(self.options())
        }
    }

    fn table_format(&self) -> TableFormat {
        match self.format {
            Format::Csv => TableFormat::Csv,
            Format::Markdown => TableFormat::Markdown,
        }
    }

    fn load_cache(&self) -> anyhow::Result<Option<Cache>> {
        if self.no_cache {
            return Ok(None);
        }
        let (cache, warnings) = Cache::load(&self.cache)?;
        for w in warnings {
            eprintln!("warning: cache: {w}");
        }
        Ok(Some(cache))
    }

    fn save_cache(&self, cache: Option<Cache>) -> anyhow::Result<()> {
        if let Some(c) = cache {
            c.store(&self.cache)
                .with_context(|| format!("writing cache {}", self.cache.display()))?;
        }
        Ok(())
    }
}

fn interval_text(lo: u64, hi: u64) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("[{lo},{hi}]")
    }
}

fn cmd_srm(flags: &Flags, m: u64, p: u64) -> anyhow::Result<u8> {
    if p == 0 || p > m {
        bail!("need 1 <= p <= m");
    }
    let r = if flags.bounds_only {
        srm_bounds(m, p)?
    } else {
        solve_srm(m, p, &flags.options())?
    };
    println!("{}", r.value);
    println!("provenance: {}", r.provenance);
    if flags.certificate {
        match &r.certificate {
            Some(a) => print!("{}", format_matrix_text(a, p as usize)),
            None => println!("certificate: none (rank below 2)"),
        }
    }
    Ok(if r.value.exact().is_some() { EXIT_EXACT } else { EXIT_INTERVAL })
}

fn cmd_mkb(flags: &Flags, k: u32, b: u64, exact: bool) -> anyhow::Result<u8> {
    let (lo, hi, prov, cert) = if exact {
        let mut cache = flags.load_cache()?;
        let r = match cache.as_mut() {
            Some(c) => c.solve_mk(k, b, &flags.options())?,
            None => buchstaber::solver::solve_mk(k, b, &flags.options())?,
        };
        flags.save_cache(cache)?;
        let prov = format!("{} ({} nodes)", r.provenance, r.nodes);
        (r.value, r.upper, prov, r.certificate)
    } else {
        let iv = bounds(k, b)?;
        let prov = format!(
            "lower: {}; upper: {}",
            iv.lo_provenance.join(" + "),
            iv.hi_provenance.join(" + ")
        );
        let cert = iv.certificate.clone().expect("bounds carry a certificate");
        (iv.lo, iv.hi, prov, cert)
    };
    println!("{}", interval_text(lo, hi));
    println!("provenance: {prov}");
    if flags.certificate {
        let counts: Vec<String> = cert.counts().iter().map(u32::to_string).collect();
        println!("certificate: {}", counts.join(" "));
    }
    Ok(if lo == hi { EXIT_EXACT } else { EXIT_INTERVAL })
}

fn cmd_verify(path: &PathBuf) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (a, p) = parse_matrix_text(&text)?;
    if p == 0 || p > a.len() {
        bail!("declared p={p} is outside 1..={}", a.len());
    }
    let violation = find_violation(&a, p)?;
    if a.len() <= 20 && realizes_naive(&a, p)? != violation.is_none() {
        bail!("internal error: subset enumeration disagrees with hyperplane counts");
    }
    match violation {
        None => {
            println!("ok: every {p} of the {} columns span", a.len());
            Ok(EXIT_EXACT)
        }
        Some(v) => {
            println!(
                "violation: hyperplane u={:?} contains {} columns (at most {} allowed)",
                v.u,
                v.columns_inside,
                p - 1
            );
            Ok(EXIT_VIOLATION)
        }
    }
}

fn cmd_table(
    flags: &Flags,
    kind: TableKind,
    m: Option<RangeInclusive<u64>>,
    p: Option<RangeInclusive<u64>>,
    k: Option<RangeInclusive<u64>>,
    b: Option<RangeInclusive<u64>>,
) -> anyhow::Result<u8> {
    let mode = flags.mode();
    let out = match kind {
        TableKind::Srm => {
            let (Some(m), Some(p)) = (m, p) else { bail!("table srm needs --m and --p") };
            render(["m", "p"], &srm_rows(m, p, &mode)?, flags.table_format())
        }
        TableKind::Mkb => {
            let (Some(k), Some(b)) = (k, b) else { bail!("table mkb needs --k and --b") };
            let ks = *k.start() as u32..=*k.end() as u32;
            let mut cache = match mode {
                CheckMode::Solver(_) => flags.load_cache()?,
                CheckMode::BoundsOnly => None,
            };
            let rows = mk_rows(ks, b, &mode, cache.as_mut())?;
            flags.save_cache(cache)?;
            render(["k", "b"], &rows, flags.table_format())
        }
    };
    print!("{out}");
    Ok(EXIT_EXACT)
}

fn cmd_check(
    flags: &Flags,
    q: RangeInclusive<u64>,
    m: RangeInclusive<u64>,
    p: RangeInclusive<u64>,
    skip_mk: bool,
    skip_srm: bool,
    verbose: bool,
) -> anyhow::Result<u8> {
    // a full table run should finish; unresolved cells are reported as OPEN
    let mode = match flags.mode() {
        CheckMode::Solver(mut o) if flags.time_limit.is_none() => {
            o.time_limit_ms = Some(CHECK_TIME_LIMIT_MS);
            CheckMode::Solver(o)
        }
        m => m,
    };
    let cfg = CheckConfig {
        mode,
        q_range: (!skip_mk).then_some(q),
        srm_window: (!skip_srm).then_some((m, p)),
    };
    let report = check_paper(&cfg)?;
    for c in &report.cells {
        if verbose || c.verdict != Verdict::Match {
            println!("{c}");
        }
    }
    println!("{}", report.summary());
    Ok(if report.count(Verdict::Mismatch) == 0 { EXIT_EXACT } else { EXIT_VIOLATION })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let flags = &cli.flags;
    if flags.parallel {
        eprintln!("warning: --parallel: values are exact but certificates may differ between runs");
    }
    match cli.cmd {
        Cmd::Srm { m, p } => cmd_srm(flags, m, p),
        Cmd::Mkb { k, b, exact } => cmd_mkb(flags, k, b, exact),
        Cmd::Verify { path } => cmd_verify(&path),
        Cmd::Table { kind, m, p, k, b } => cmd_table(flags, kind, m, p, k, b),
        Cmd::CheckPaper { q, m, p, skip_mk, skip_srm, verbose } => {
            cmd_check(flags, q, m, p, skip_mk, skip_srm, verbose)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_EXACT });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
