//! Corpus benchmarking: one CSV row per (automaton, algorithm).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use sfasim_core::automata::global_mintermise;
use sfasim_core::simulation::{run, SimOptions};
use sfasim_core::{complete, read_sfa, Algo, Limits, OpCounts, ResourceError, Sfa, SimError};

pub const CSV_HEADER: &str = "id,n,m,maxoutdeg,minterms,blowup,algo,ms,ops_and,ops_or,ops_not,ops_sat,outcome,digest";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Timeout,
    MintermCap,
    OomGuard,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Timeout => "timeout",
            Outcome::MintermCap => "minterm-cap",
            Outcome::OomGuard => "oom-guard",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub id: String,
    /// Shape of the completed automaton every algorithm runs on.
    pub n: usize,
    pub m: usize,
    pub max_outdeg: usize,
    /// `None` when global mintermisation itself hits the cap or the timeout.
    pub minterms: Option<usize>,
    pub blowup: Option<f64>,
    pub algo: Algo,
    /// The timeout for failed runs.
    pub elapsed: Duration,
    pub ops: OpCounts,
    pub outcome: Outcome,
    pub digest: Option<String>,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{:.3},{},{},{},{},{},{}",
            self.id,
            self.n,
            self.m,
            self.max_outdeg,
            opt(self.minterms.map(|x| x.to_string())),
            opt(self.blowup.map(|b| format!("{b:.3}"))),
            self.algo,
            self.elapsed.as_secs_f64() * 1e3,
            self.ops.and,
            self.ops.or,
            self.ops.not,
            self.ops.is_sat,
            self.outcome.name(),
            opt(self.digest.clone()),
        )
    }
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algos: Vec<Algo>,
    pub timeout: Duration,
    pub minterm_cap: usize,
    /// Rows faster than this are dropped.
    pub min_ms: Option<f64>,
}

fn limits(cfg: &BenchConfig) -> Limits {
    Limits::default().with_cap(cfg.minterm_cap).with_timeout(cfg.timeout)
}

/// Benchmarks one automaton with every configured algorithm, sequentially.
pub fn bench_automaton(id: &str, m: &Sfa, cfg: &BenchConfig) -> Vec<BenchRecord> {
    let c = complete(m).sfa;
    let (minterms, blowup) = match global_mintermise(&c, &limits(cfg)) {
        Ok((_, stats)) => (Some(stats.minterms), stats.blowup()),
        Err(_) => (None, None),
    };
    let mut out = Vec::new();
    for &algo in &cfg.algos {
        let before = m.algebra().ops();
        let opts = SimOptions::with_limits(limits(cfg));
        let start = Instant::now();
        let res = run(algo, &complete(m).sfa, &opts);
        let mut elapsed = start.elapsed();
        let ops = m.algebra().ops() - before;
        let (outcome, digest) = match res {
            // finished, but past the deadline between two checks
            Ok(_) if elapsed > cfg.timeout => (Outcome::Timeout, None),
            Ok(r) => (Outcome::Ok, Some(r.relation.digest())),
            Err(SimError::Resource(e)) => match e {
                ResourceError::MintermBlowup { .. } => (Outcome::MintermCap, None),
                ResourceError::Timeout(_) => (Outcome::Timeout, None),
                ResourceError::MemoryGuard { .. } => (Outcome::OomGuard, None),
            },
            Err(SimError::Incomplete { .. }) => unreachable!("input was completed"),
        };
        if outcome != Outcome::Ok {
            elapsed = cfg.timeout;
        }
        out.push(BenchRecord {
            id: id.to_string(),
            n: c.num_states(),
            m: c.num_transitions(),
            max_outdeg: c.max_out_degree(),
            minterms,
            blowup,
            algo,
            elapsed,
            ops,
            outcome,
            digest,
        });
    }
    if let Some(min) = cfg.min_ms {
        out.retain(|r| r.elapsed.as_secs_f64() * 1e3 >= min);
    }
    out
}

/// `.sfa` files of `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "sfa"))
        .collect();
    files.sort();
    Ok(files)
}

/// Benchmarks every parsable file in `dir`; unreadable files become diagnostics.
pub fn bench_dir(dir: &Path, cfg: &BenchConfig) -> std::io::Result<(Vec<BenchRecord>, Vec<String>)> {
    let mut records = Vec::new();
    let mut diagnostics = Vec::new();
    for path in corpus_files(dir)? {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let parsed = std::fs::read_to_string(&path)
            .map_err(|e| e.to_string())
            .and_then(|text| read_sfa(&text).map_err(|e| e.to_string()));
        match parsed {
            Ok(m) => records.extend(bench_automaton(&id, &m, cfg)),
            Err(e) => diagnostics.push(format!("{}: {e}", path.display())),
        }
    }
    Ok((records, diagnostics))
}
