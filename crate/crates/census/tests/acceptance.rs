//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tourney::catalog::{calibrate_catalog, catalog, classify, for_each_k_subset, oracle_count, FROZEN_CODES};
use tourney::count::{count_3, count_4, count_5, four_rhs};
use tourney::detect::{check_d_free, detect, DFreeCheck};
use tourney::generators::*;
use tourney::linalg::IntMatrix;
use tourney::pairstats::pair_stat;
use tourney::reductions::*;
use tourney::rng::SplitMix64;
use tourney::system::{five_matrix, five_solve_block, four_matrix, FOUR_MATRIX};
use tourney::undirected::UndirectedGraph;
use tourney::{binomial, PatternName, Tournament};
use tourney_census::bench::{self, Phase};
use PatternName::*;

const COUNT4_LIMIT: Duration = Duration::from_secs(60);
const COUNT5_LIMIT: Duration = Duration::from_secs(300);
const PERF_COUNT4_2048: Duration = Duration::from_secs(30);
const PERF_DETECT_D_8192: Duration = Duration::from_secs(10);
const PERF_MAX_SLOPE: f64 = 3.5;

/// The four-vertex matrix as criterion 4 states it, with coefficient 1 for
/// `D` in the third row.
const STATED_FOUR_MATRIX: [[i128; 4]; 4] = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]];

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn corpus4() -> Vec<Tournament> {
    (0..220u64).map(|s| random_tournament(4 + (s as usize * 37) % 61, s)).collect()
}

fn corpus5() -> Vec<Tournament> {
    (0..110u64).map(|s| random_tournament(5 + (s as usize * 13) % 28, 1000 + s)).collect()
}

fn criterion_1() -> Outcome {
    let gs = corpus4();
    let start = Instant::now();
    for (i, g) in gs.iter().enumerate() {
        ensure!(count_4(g).unwrap() == oracle_count(g, 4).unwrap(), "instance {i} (n = {}) differs", g.n());
    }
    let t = start.elapsed();
    ensure!(t < COUNT4_LIMIT, "{t:?} exceeds {COUNT4_LIMIT:?}");
    Ok(format!("{} instances, n 4..=64, {:.2}s incl. oracle", gs.len(), t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let gs = corpus5();
    let start = Instant::now();
    for (i, g) in gs.iter().enumerate() {
        ensure!(count_5(g).unwrap() == oracle_count(g, 5).unwrap(), "instance {i} (n = {}) differs", g.n());
    }
    let t = start.elapsed();
    ensure!(t < COUNT5_LIMIT, "{t:?} exceeds {COUNT5_LIMIT:?}");
    Ok(format!("{} instances, n 5..=32, {:.2}s incl. oracle", gs.len(), t.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    // The random corpus is almost always positive; D-free blowups and small
    // instances supply negatives.
    let c3 = rotational(3, &[1]);
    let mut gs = corpus4();
    gs.extend((0..100u64).map(|s| with_random_flips(&transitive_blowup(&c3, &[2 + s as usize % 5, 3, 4]), (s % 3) as usize, s)));
    gs.extend((0..100u64).map(|s| random_tournament(4 + s as usize % 4, 5000 + s)));
    gs.push(rotational(7, &[1, 2, 4]));
    let (mut pos, mut neg) = (0, 0);
    for (i, g) in gs.iter().enumerate() {
        let oracle = oracle_count(g, 4).unwrap();
        for p in [T4, X4, D, DT] {
            match detect(g, p).unwrap() {
                Some(w) => {
                    ensure!(oracle.get(p) > 0, "{p} reported on instance {i} but absent");
                    ensure!(w.pattern == p && w.verify(g), "{p} witness on instance {i} misclassified");
                    ensure!(classify(&g.induced(&w.vertices).unwrap()) == Some(p), "{p} witness class");
                    pos += 1;
                }
                None => {
                    ensure!(oracle.get(p) == 0, "{p} missed on instance {i}");
                    neg += 1;
                }
            }
        }
    }
    ensure!(neg > 0 && pos > 0, "degenerate corpus");
    Ok(format!("{} instances, {pos} positive and {neg} negative answers", gs.len()))
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Returns the structural checks and, separately, whether the engine's
/// four-vertex matrix equals the stated one.
fn criterion_4() -> (Outcome, Option<String>) {
    let structural = (|| -> Outcome {
        let a = four_matrix();
        let lower = (0..4).all(|i| (i + 1..4).all(|j| a.get(i, j) == 0));
        ensure!(lower, "four-vertex matrix is not lower-triangular");
        let d4 = a.determinant();
        ensure!(d4 != 0 && d4 == cofactor_det(&rows_of(&a)), "four-vertex determinant {d4}");
        let table = five_matrix();
        ensure!(table.rows() == 20 && table.cols() == 12, "table shape");
        let rank = table.rank();
        ensure!(rank == 10, "rank {rank}");
        let block = five_solve_block();
        let d5 = block.determinant();
        let cof = cofactor_det(&rows_of(&block));
        ensure!(d5 != 0 && d5 == cof, "block determinant {d5} vs cofactor {cof}");
        Ok(format!("4x4 lower-triangular det {d4}; table rank {rank}; rows 3,5,8,15,18 det {d5} (cofactor {cof})"))
    })();
    let stated = if FOUR_MATRIX == STATED_FOUR_MATRIX {
        None
    } else {
        // On D itself the third sum is 3, so the stated row would give #D = 3.
        let d = catalog().representative(D);
        let sums = four_rhs(d);
        Some(format!(
            "stated matrix has D coefficient 1 in row 3, but on a single D the sum of d+ * p(u,v) is {} (must be 3 * #D); engine uses {:?}",
            sums[2], FOUR_MATRIX[2]
        ))
    };
    (structural, stated)
}

fn criterion_5() -> Outcome {
    ensure!(PatternName::of_order(4).len() == 4, "four-vertex classes");
    ensure!(PatternName::of_order(5).len() == 12, "five-vertex classes");
    let cat = calibrate_catalog().map_err(|e| format!("calibration: {e}"))?;
    ensure!(cat.codes() == FROZEN_CODES.to_vec(), "calibration differs from the frozen table");
    let sig = |p| cat.entry(p).signature_size();
    ensure!(sig(T3) == 1 && sig(C3) == 1, "three-vertex signatures");
    for &p in PatternName::of_order(4) {
        ensure!(sig(p) >= 2, "sig({p}) = {}", sig(p));
    }
    let deg = |p| cat.entry(p).out_degrees.clone();
    ensure!(deg(H4) == [3, 3, 2, 1, 1] && deg(H5) == deg(H4), "H4/H5 degrees");
    ensure!(deg(H6) == [3, 2, 2, 2, 1] && deg(H7) == deg(H6) && deg(H8) == deg(H6), "H6/H7/H8 degrees");
    let others = PatternName::of_order(5).iter().filter(|&&p| deg(p) == deg(H4) || deg(p) == deg(H6)).count();
    ensure!(others == 5, "{others} classes share the two sequences");
    Ok("4 + 12 classes; sig(T3)=sig(C3)=1, 4-vertex sig >= 2; 33211 {H4,H5}; 32221 {H6,H7,H8}; calibration unique".into())
}

fn criterion_6() -> Outcome {
    let mut rng = SplitMix64::new(6);
    let instances = 520;
    for i in 0..instances {
        let n = 1 + rng.below(40) as usize;
        let g = random_tournament(n, rng.next_u64());
        let three = count_3(&g);
        let (mut p_uv, mut p_vu) = (0u128, 0u128);
        for (u, v) in g.edges() {
            let s = pair_stat(&g, u, v);
            ensure!(s.dplus + s.dminus + s.p_uv + s.p_vu == n as u32 - 2, "pair identity, instance {i}");
            p_uv += s.p_uv as u128;
            p_vu += s.p_vu as u128;
        }
        ensure!(p_uv == three.get(T3), "sum p(u,v) != #T3, instance {i}");
        ensure!(p_vu == 3 * three.get(C3), "sum p(v,u) != 3 #C3, instance {i}");
        if n <= 24 {
            let t = g.transpose();
            ensure!(count_4(&g).unwrap().transposed() == count_4(&t).unwrap(), "count_4 duality, instance {i}");
            ensure!(count_5(&g).unwrap().transposed() == count_5(&t).unwrap(), "count_5 duality, instance {i}");
        }
        ensure!(count_5(&g).unwrap().total() == binomial(n as u128, 5), "five-vertex total");
    }
    Ok(format!("{instances} instances, n 1..=40"))
}

fn brute_colorful(g: &Tournament, name: PatternName, p: &VertexPartition) -> u128 {
    let mut c = 0;
    for_each_k_subset(g.n(), name.order(), |s| {
        let mut parts: Vec<usize> = s.iter().map(|&v| p.part_of(v)).collect();
        parts.sort_unstable();
        parts.dedup();
        if parts.len() == s.len() && classify(&g.induced(s).unwrap()) == Some(name) {
            c += 1;
        }
    });
    c
}

fn criterion_7() -> Outcome {
    let four_five: Vec<PatternName> = PatternName::ALL.into_iter().filter(|p| p.order() >= 4).collect();
    ensure!(four_five.len() == 16, "pattern list");
    for seed in 0..8u64 {
        let g = random_tournament(5 + seed as usize, 70 + seed);
        let (c4, c5) = (count_4(&g).unwrap(), count_5(&g).unwrap());
        for &p in &four_five {
            let want = if p.order() == 4 { c4.get(p) } else { c5.get(p) };
            let got = generic_count(&g, catalog().representative(p)).unwrap();
            ensure!(got == want, "generic_count {p} on n = {}: {got} vs {want}", g.n());
        }
    }
    let mut rng = SplitMix64::new(7);
    for p in PatternName::ALL {
        let g = random_tournament(10, rng.next_u64());
        let part = VertexPartition::random(10, p.order(), &mut rng);
        let got = count_colorful(&g, catalog().representative(p), &part).unwrap();
        ensure!(got == brute_colorful(&g, p, &part), "count_colorful {p}");
    }
    let d_free = transitive_blowup(&rotational(3, &[1]), &[3, 3, 3]);
    let run = color_coding_with_trials(&d_free, catalog().representative(D), 10_000, 1);
    ensure!(run.witness.is_none() && run.trials_run == 10_000, "false positive for D");
    let run = color_coding_with_trials(&transitive(10), catalog().representative(R5), 10_000, 2);
    ensure!(run.witness.is_none(), "false positive for R5");
    for p in PatternName::ALL {
        let g = random_tournament(12, 40 + p.index() as u64);
        if oracle_count(&g, p.order()).unwrap().get(p) == 0 {
            continue;
        }
        let t = catalog().representative(p);
        let hit = (0..3u64).any(|run| color_coding_detect(&g, t, 1e-3, run).is_some_and(|w| w.verify(&g)));
        ensure!(hit, "color coding missed {p}");
    }
    let mut with = 0;
    for seed in 0..30u64 {
        let g = UndirectedGraph::random_gnp(20, if seed % 3 == 0 { 0.1 } else { 0.5 }, seed);
        let got = clique_detect(&g, 3, seed).unwrap();
        ensure!(got == g.has_triangle(), "triangle answer on graph {seed}");
        with += got as usize;
    }
    Ok(format!("generic_count 16 patterns n 5..=12; colorful = brute; 10^4 trials one-sided; triangles {with}/30"))
}

fn criterion_8() -> Outcome {
    let g = random_tournament(2048, 8);
    let start = Instant::now();
    count_4(&g).unwrap();
    let t4 = start.elapsed();
    ensure!(t4 < PERF_COUNT4_2048, "count_4 n=2048 took {t4:?}");
    let g = random_tournament(8192, 8);
    let start = Instant::now();
    detect(&g, D).unwrap();
    let td = start.elapsed();
    // Worst case: a D-free input forces the full structural scan.
    let free = transitive_blowup(&rotational(3, &[1]), &[2731, 2731, 2730]);
    let start = Instant::now();
    let check = check_d_free(&free);
    let tf = start.elapsed();
    ensure!(matches!(check, DFreeCheck::Free(_)), "blowup reported as containing D");
    ensure!(td.max(tf) < PERF_DETECT_D_8192, "detect_D n=8192 took {td:?} / {tf:?}");
    let rows = bench::run_bench(&[256, 512, 1024, 2048], 1, &[Phase::Count4]).unwrap();
    let slope = bench::log_slope(&rows, Phase::Count4).unwrap();
    ensure!(slope < PERF_MAX_SLOPE, "count_4 log-slope {slope:.2}");
    Ok(format!(
        "count_4 n=2048 {:.0}ms; detect_D n=8192 {:.1}ms random, {:.0}ms D-free; log-slope {slope:.2}",
        t4.as_secs_f64() * 1e3,
        td.as_secs_f64() * 1e3,
        tf.as_secs_f64() * 1e3
    ))
}

fn report(k: usize, outcome: &Outcome) -> bool {
    match outcome {
        Ok(detail) => println!("PASS criterion {k}: {detail}"),
        Err(detail) => println!("FAIL criterion {k}: {detail}"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    for (k, f) in [(1, criterion_1 as fn() -> Outcome), (2, criterion_2), (3, criterion_3)] {
        if !report(k, &f()) {
            unexpected.push(k);
        }
    }
    // The stated four-vertex matrix is wrong, so criterion 4 fails as
    // stated. That failure is expected; the structural checks must hold.
    let (structural, stated) = criterion_4();
    let four = match (&structural, stated) {
        (Err(e), _) => Err(e.clone()),
        (Ok(_), Some(why)) => Err(why),
        (Ok(s), None) => Ok(s.clone()),
    };
    report(4, &four);
    if let Ok(s) = &structural {
        println!("     criterion 4 structural checks hold: {s}");
    } else {
        unexpected.push(4);
    }
    for (k, f) in [(5, criterion_5 as fn() -> Outcome), (6, criterion_6), (7, criterion_7), (8, criterion_8)] {
        if !report(k, &f()) {
            unexpected.push(k);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
