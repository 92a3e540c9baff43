//! Wall-clock timings of the counting and detection phases on random
//! tournaments, written as CSV with header `n,phase,millis`.

use std::io::Write;
use std::time::Instant;

use clap::ValueEnum;
use tourney::count::{count_4, count_5};
use tourney::detect::{detect_d, detect_x4};
use tourney::generators::random_tournament;
use tourney::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Phase {
    #[value(name = "count_4")]
    Count4,
    #[value(name = "count_5")]
    Count5,
    #[value(name = "detect_D")]
    DetectD,
    #[value(name = "detect_X4")]
    DetectX4,
}

impl Phase {
    pub const ALL: [Phase; 4] = [Phase::Count4, Phase::Count5, Phase::DetectD, Phase::DetectX4];

    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Count4 => "count_4",
            Phase::Count5 => "count_5",
            Phase::DetectD => "detect_D",
            Phase::DetectX4 => "detect_X4",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub phase: Phase,
    pub millis: f64,
}

/// Times `phase` once on `random_tournament(n, seed)`.
pub fn time_phase(n: usize, seed: u64, phase: Phase) -> Result<BenchRow, Error> {
    let g = random_tournament(n, seed);
    let start = Instant::now();
    match phase {
        Phase::Count4 => drop(count_4(&g)?),
        Phase::Count5 => drop(count_5(&g)?),
        Phase::DetectD => drop(detect_d(&g)),
        Phase::DetectX4 => drop(detect_x4(&g)),
    }
    Ok(BenchRow {
        n,
        phase,
        millis: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// One row per size and phase, sizes outermost. Sizes must be ascending.
pub fn run_bench(sizes: &[usize], seed: u64, phases: &[Phase]) -> Result<Vec<BenchRow>, Error> {
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "sizes must be ascending");
    let mut rows = Vec::new();
    for &n in sizes {
        for &p in phases {
            rows.push(time_phase(n, seed, p)?);
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "phase", "millis"])?;
    for r in rows {
        w.write_record([r.n.to_string(), r.phase.as_str().to_string(), format!("{:.3}", r.millis)])?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `ln millis` against `ln n` over the rows of one
/// phase; `None` with fewer than two distinct sizes.
pub fn log_slope(rows: &[BenchRow], phase: Phase) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.phase == phase && r.millis > 0.0)
        .map(|r| ((r.n as f64).ln(), r.millis.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}
