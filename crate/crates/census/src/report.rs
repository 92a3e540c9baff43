//! JSON shapes written by the command line. Pattern maps keep the order of
//! [`PatternName::ALL`].

use std::time::Instant;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use tourney::count::{count_3, direct_five_counts, four_rhs, solve_five, solve_four, five_rhs};
use tourney::pairstats::{sum_over_edges, PairStat};
use tourney::{Catalog, CountVector, Error, Tournament};

/// Serializes a count vector as `{"T4": 15, "X4": 0, ...}`.
#[derive(Debug, Clone, Copy)]
pub struct Counts<'a>(pub &'a CountVector);

impl Serialize for Counts<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.iter().count()))?;
        for (name, value) in self.0.iter() {
            map.serialize_entry(name.as_str(), &value)?;
        }
        map.end()
    }
}

pub fn counts_json(c: &CountVector) -> String {
    serde_json::to_string(&Counts(c)).expect("serializable")
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseTiming {
    pub k: usize,
    pub phase: &'static str,
    pub millis: f64,
}

#[derive(Debug, Clone)]
pub struct KCounts {
    pub k: usize,
    pub counts: CountVector,
}

impl Serialize for KCounts {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("k", &self.k)?;
        map.serialize_entry("total", &self.counts.total())?;
        map.serialize_entry("counts", &Counts(&self.counts))?;
        map.end()
    }
}

/// Counts plus per-phase wall times. Timings make it run-dependent, unlike
/// the plain count output.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub input: String,
    pub n: usize,
    pub seed: Option<u64>,
    pub engine_version: &'static str,
    pub censuses: Vec<KCounts>,
    pub timings: Vec<PhaseTiming>,
}

fn timed<T>(timings: &mut Vec<PhaseTiming>, k: usize, phase: &'static str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.push(PhaseTiming {
        k,
        phase,
        millis: start.elapsed().as_secs_f64() * 1e3,
    });
    out
}

/// Runs the census for each `k` in `ks`, timing the edge sums, the direct
/// counts (k = 5) and the solve separately.
pub fn census_report(g: &Tournament, ks: &[usize], input: String, seed: Option<u64>) -> Result<CensusReport, Error> {
    // Build the lookup tables up front so they are not billed to a phase.
    tourney::catalog();
    let mut timings = Vec::new();
    let mut censuses = Vec::new();
    for &k in ks {
        let counts = match k {
            3 => timed(&mut timings, 3, "degrees", || count_3(g)),
            4 => {
                let sums = timed(&mut timings, 4, "pair_sums", || four_rhs(g));
                timed(&mut timings, 4, "solve", || solve_four(g.n(), sums))?
            }
            5 => {
                let sums = timed(&mut timings, 5, "pair_sums", || five_rhs(g));
                let known = timed(&mut timings, 5, "direct", || direct_five_counts(g))?;
                timed(&mut timings, 5, "solve", || solve_five(&known, &sums, g.n()))?
            }
            other => return Err(Error::UnsupportedOrder(other)),
        };
        censuses.push(KCounts { k, counts });
    }
    Ok(CensusReport {
        input,
        n: g.n(),
        seed,
        engine_version: env!("CARGO_PKG_VERSION"),
        censuses,
        timings,
    })
}

/// One row of `census calibrate` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub name: &'static str,
    pub order: usize,
    pub code: String,
    pub aut_order: u64,
    pub out_degrees: Vec<usize>,
    pub signature_size: usize,
}

pub fn catalog_rows(cat: &Catalog) -> Vec<CatalogRow> {
    cat.entries()
        .iter()
        .map(|e| CatalogRow {
            name: e.name.as_str(),
            order: e.name.order(),
            code: format!("{:#x}", e.code),
            aut_order: e.aut_order,
            out_degrees: e.out_degrees.clone(),
            signature_size: e.signature_size(),
        })
        .collect()
}

/// Aggregate pair statistics for `census stats`.
#[derive(Debug, Clone, Serialize)]
pub struct PairSums {
    pub n: usize,
    pub edges: u128,
    pub t3: u128,
    pub c3: u128,
    /// Sums over edges `(u, v)` of `d⁺(u,v)`, `d⁻(u,v)`, `p(u,v)`, `p(v,u)`.
    pub sum_dplus: u128,
    pub sum_dminus: u128,
    pub sum_p_uv: u128,
    pub sum_p_vu: u128,
    pub four_sums: [u128; 3],
    pub five_sums: Vec<u128>,
    pub scc_sizes: Vec<usize>,
}

pub fn pair_sums(g: &Tournament) -> PairSums {
    let [sum_dplus, sum_dminus, sum_p_uv, sum_p_vu] = sum_over_edges(g, |s: PairStat| {
        [s.dplus as u128, s.dminus as u128, s.p_uv as u128, s.p_vu as u128]
    });
    let c3 = count_3(g);
    PairSums {
        n: g.n(),
        edges: tourney::binomial(g.n() as u128, 2),
        t3: c3.get(tourney::PatternName::T3),
        c3: c3.get(tourney::PatternName::C3),
        sum_dplus,
        sum_dminus,
        sum_p_uv,
        sum_p_vu,
        four_sums: four_rhs(g),
        five_sums: five_rhs(g).to_vec(),
        scc_sizes: g.scc().components.iter().map(Vec::len).collect(),
    }
}
