//! The `census` command line.
//!
//! Exit codes: 0 success, 1 negative detection, 2 usage or input error,
//! 3 internal inconsistency. JSON goes to stdout, diagnostics to stderr.
//! Every `FILE` argument accepts `-` for stdin.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;
use tourney::catalog::{calibrate_catalog, oracle_count, FROZEN_CODES};
use tourney::count::count_k;
use tourney::detect::detect;
use tourney::generators::{carousel, random_tournament, transitive};
use tourney::reductions::{clique_detect_via_count, color_coding_with_trials, pattern_for_clique, trials_for};
use tourney::undirected::UndirectedGraph;
use tourney::{catalog, PatternName, Tournament};

use crate::bench::{self, Phase};
use crate::corpus;
use crate::format::{self, FormatError, TextFormat};
use crate::report::{self, Counts};

#[derive(Debug, Parser)]
#[command(name = "census", version, about = "Exact counting and detection of small sub-tournaments")]
pub struct Cli {
    /// Worker threads for the counting engine (default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_pattern(s: &str) -> Result<PatternName, String> {
    s.parse().map_err(|_| format!("unknown pattern {s:?}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find one copy of a three- or four-vertex pattern (exit 1 if absent).
    Detect {
        #[arg(long, value_parser = parse_pattern)]
        pattern: PatternName,
        file: String,
    },
    /// Randomized color-coding detection of any pattern on 3 to 5 vertices.
    DetectCc {
        /// Pattern by name.
        #[arg(long, value_parser = parse_pattern, required_unless_present = "pattern_file", conflicts_with = "pattern_file")]
        pattern: Option<PatternName>,
        /// Pattern given as a tournament file.
        #[arg(long)]
        pattern_file: Option<String>,
        /// Failure probability bound for a negative answer.
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        file: String,
    },
    /// Exact census of all patterns on k vertices.
    Count {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=5))]
        k: u8,
        /// Classify every k-subset instead.
        #[arg(long, conflicts_with = "verify")]
        oracle: bool,
        /// Run both engines and compare (exit 3 on disagreement).
        #[arg(long)]
        verify: bool,
        /// Emit a report with phase timings (output is not byte-stable).
        #[arg(long, conflicts_with_all = ["oracle", "verify"])]
        report: bool,
        file: String,
    },
    /// Aggregate pair statistics.
    Stats { file: String },
    /// Re-derive the pattern catalog and compare it with the frozen table.
    Calibrate {
        /// Write the table to this file instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Clique detection in an undirected graph through colorful counting.
    Clique {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        file: String,
    },
    /// Print a generated instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Family::Random)]
        family: Family,
        /// Edge probability for the `gnp` family.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, value_enum, default_value_t = OutFormat::Matrix)]
        format: OutFormat,
    },
    /// Time the main routines on random tournaments; CSV `n,phase,millis`.
    Bench {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, value_delimiter = ',')]
        phases: Vec<Phase>,
    },
    /// Cross-check every engine against the exhaustive oracle on a corpus.
    Verify {
        /// Directory of instance files (default: the bundled corpus).
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Random,
    Transitive,
    Carousel,
    /// Undirected G(n, p) graph in the symmetric matrix format.
    Gnp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Matrix,
    Edges,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input { path: String, source: FormatError },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Library(#[from] tourney::Error),
    #[error("inconsistency: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use tourney::Error as E;
        match self {
            CliError::Library(E::InternalInconsistency(_) | E::DivisionCheck | E::CalibrationAmbiguous(_)) => 3,
            CliError::Inconsistent(_) => 3,
            _ => 2,
        }
    }
}

/// Whether a run found what it was asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Found,
    NotFound,
}

struct Io<'a> {
    stdin: &'a mut (dyn Read + Send),
    stdout: &'a mut (dyn Write + Send),
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        let io_err = |source| CliError::Io {
            path: path.to_string(),
            source,
        };
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(io_err)?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(io_err)
        }
    }

    fn tournament(&mut self, path: &str) -> Result<Tournament, CliError> {
        let text = self.read(path)?;
        format::parse_tournament(&text).map_err(|source| CliError::Input {
            path: path.to_string(),
            source,
        })
    }

    fn graph(&mut self, path: &str) -> Result<UndirectedGraph, CliError> {
        let text = self.read(path)?;
        format::parse_undirected(&text).map_err(|source| CliError::Input {
            path: path.to_string(),
            source,
        })
    }

    fn json(&mut self, value: &impl Serialize) -> Result<(), CliError> {
        let s = serde_json::to_string(value).expect("serializable");
        self.text(&s)?;
        self.text("\n")
    }

    fn text(&mut self, s: &str) -> Result<(), CliError> {
        self.stdout.write_all(s.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut (dyn Read + Send),
    stdout: &mut (dyn Write + Send),
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                2
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                0
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "census: cannot start worker threads: {e}");
            return 2;
        }
    };
    let mut io = Io { stdin, stdout };
    match pool.install(|| execute(cli.command, &mut io)) {
        Ok(Outcome::Found) => 0,
        Ok(Outcome::NotFound) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "census: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, io: &mut Io<'_>) -> Result<Outcome, CliError> {
    match command {
        Command::Detect { pattern, file } => {
            let g = io.tournament(&file)?;
            let w = detect(&g, pattern).map_err(|_| {
                CliError::Usage(format!("{pattern} is not a three- or four-vertex pattern; use detect-cc"))
            })?;
            io.json(&json!({
                "pattern": pattern.as_str(),
                "found": w.is_some(),
                "witness": w.as_ref().map(|w| &w.vertices),
            }))?;
            Ok(if w.is_some() { Outcome::Found } else { Outcome::NotFound })
        }
        Command::DetectCc {
            pattern,
            pattern_file,
            delta,
            seed,
            file,
        } => {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(CliError::Usage("--delta must lie strictly between 0 and 1".into()));
            }
            let t = match (pattern, pattern_file) {
                (Some(p), _) => catalog().representative(p).clone(),
                (None, Some(path)) => io.tournament(&path)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let name = catalog()
                .classify(&t)
                .ok_or_else(|| CliError::Usage(format!("patterns must have 3 to 5 vertices, got {}", t.n())))?;
            let g = io.tournament(&file)?;
            let budget = trials_for(t.n(), delta);
            let run = color_coding_with_trials(&g, &t, budget, seed);
            io.json(&json!({
                "pattern": name.as_str(),
                "found": run.witness.is_some(),
                "witness": run.witness.as_ref().map(|w| &w.vertices),
                "trials_run": run.trials_run,
                "trial_budget": budget,
                "delta": delta,
                "seed": seed,
            }))?;
            Ok(if run.witness.is_some() { Outcome::Found } else { Outcome::NotFound })
        }
        Command::Count {
            k,
            oracle,
            verify,
            report,
            file,
        } => {
            let k = k as usize;
            let g = io.tournament(&file)?;
            if report {
                let r = report::census_report(&g, &[k], file, None)?;
                io.json(&r)?;
            } else if oracle {
                io.json(&Counts(&oracle_count(&g, k)?))?;
            } else if verify {
                let engine = count_k(&g, k)?;
                let brute = oracle_count(&g, k)?;
                io.json(&json!({
                    "engine": Counts(&engine),
                    "oracle": Counts(&brute),
                    "agree": engine == brute,
                }))?;
                if engine != brute {
                    return Err(CliError::Inconsistent("engine and oracle counts differ".into()));
                }
            } else {
                io.json(&Counts(&count_k(&g, k)?))?;
            }
            Ok(Outcome::Found)
        }
        Command::Stats { file } => {
            let g = io.tournament(&file)?;
            io.json(&report::pair_sums(&g))?;
            Ok(Outcome::Found)
        }
        Command::Calibrate { emit } => {
            let cat = calibrate_catalog()?;
            let matches = cat.codes() == FROZEN_CODES.to_vec();
            let rows = report::catalog_rows(&cat);
            match emit {
                Some(path) => {
                    let body = serde_json::to_string_pretty(&rows).expect("serializable") + "\n";
                    fs::write(&path, body).map_err(|source| CliError::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                    io.json(&json!({
                        "classes": rows.len(),
                        "matches_frozen": matches,
                        "emitted": path.display().to_string(),
                    }))?;
                }
                None => io.json(&rows)?,
            }
            if !matches {
                return Err(CliError::Inconsistent("calibrated catalog differs from the frozen table".into()));
            }
            Ok(Outcome::Found)
        }
        Command::Clique { m, seed, file } => {
            let (name, sig) = pattern_for_clique(m).ok_or_else(|| {
                CliError::Usage(format!(
                    "no pattern on at most five vertices has order minus signature size {m}"
                ))
            })?;
            let g = io.graph(&file)?;
            let t = catalog().representative(name).clone();
            let found = clique_detect_via_count(&g, m, &t, &sig, seed)?;
            io.json(&json!({
                "m": m,
                "pattern": name.as_str(),
                "signature": sig,
                "found": found,
                "seed": seed,
            }))?;
            Ok(if found { Outcome::Found } else { Outcome::NotFound })
        }
        Command::Gen {
            n,
            seed,
            family,
            p,
            format: out,
        } => {
            if n == 0 || n > tourney::MAX_VERTICES {
                return Err(CliError::Usage(format!("--n must be in 1..={}", tourney::MAX_VERTICES)));
            }
            let text = match family {
                Family::Gnp => {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(CliError::Usage("--p must lie in [0, 1]".into()));
                    }
                    format::write_undirected(&UndirectedGraph::random_gnp(n, p, seed))
                }
                _ => {
                    let g = match family {
                        Family::Random => random_tournament(n, seed),
                        Family::Transitive => transitive(n),
                        Family::Carousel if n % 2 == 1 => carousel(n),
                        Family::Carousel => {
                            return Err(CliError::Usage("carousel tournaments need odd --n".into()))
                        }
                        Family::Gnp => unreachable!(),
                    };
                    let fmt = match out {
                        OutFormat::Matrix => TextFormat::Matrix,
                        OutFormat::Edges => TextFormat::EdgeList,
                    };
                    format::write(&g, fmt)
                }
            };
            io.text(&text)?;
            Ok(Outcome::Found)
        }
        Command::Bench { sizes, seed, phases } => {
            if !sizes.windows(2).all(|w| w[0] <= w[1]) {
                return Err(CliError::Usage("--sizes must be ascending".into()));
            }
            let phases = if phases.is_empty() { Phase::ALL.to_vec() } else { phases };
            let rows = bench::run_bench(&sizes, seed, &phases)?;
            let mut buf = Vec::new();
            bench::write_csv(&rows, &mut buf).expect("writing to memory");
            io.text(&String::from_utf8(buf).expect("CSV is UTF-8"))?;
            Ok(Outcome::Found)
        }
        Command::Verify { dir } => {
            let summary = match dir {
                None => corpus::verify_corpus(corpus::CORPUS.iter().copied()),
                Some(dir) => {
                    let io_err = |source| CliError::Io {
                        path: dir.display().to_string(),
                        source,
                    };
                    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
                        .map_err(io_err)?
                        .filter_map(|e| e.ok().map(|e| e.path()))
                        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
                        .collect();
                    files.sort();
                    let mut loaded = Vec::new();
                    for f in files {
                        let text = fs::read_to_string(&f).map_err(|source| CliError::Io {
                            path: f.display().to_string(),
                            source,
                        })?;
                        loaded.push((f.display().to_string(), text));
                    }
                    corpus::verify_corpus(loaded.iter().map(|(a, b)| (a.as_str(), b.as_str())))
                }
            };
            io.json(&summary)?;
            if !summary.passed() {
                return Err(CliError::Inconsistent(format!("{} check(s) failed", summary.failures.len())));
            }
            Ok(Outcome::Found)
        }
    }
}
