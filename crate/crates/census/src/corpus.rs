//! The bundled instance corpus and the oracle cross-check behind
//! `census verify`.

use serde::Serialize;
use tourney::catalog::{oracle_count, oracle_limit};
use tourney::count::count_k;
use tourney::detect::detect;
use tourney::{PatternName, Tournament};

use crate::format::{self, TextFormat};

/// `(file name, contents)`; names ending in `_edges.txt` use the edge-list
/// format, the rest the matrix format.
pub const CORPUS: &[(&str, &str)] = &[
    ("blowup8.txt", include_str!("../corpus/blowup8.txt")),
    ("c3.txt", include_str!("../corpus/c3.txt")),
    ("carousel9_edges.txt", include_str!("../corpus/carousel9_edges.txt")),
    ("d.txt", include_str!("../corpus/d.txt")),
    ("dt_edges.txt", include_str!("../corpus/dt_edges.txt")),
    ("layered18_edges.txt", include_str!("../corpus/layered18_edges.txt")),
    ("pair_edges.txt", include_str!("../corpus/pair_edges.txt")),
    ("qr7.txt", include_str!("../corpus/qr7.txt")),
    ("r5_edges.txt", include_str!("../corpus/r5_edges.txt")),
    ("random12.txt", include_str!("../corpus/random12.txt")),
    ("random16_edges.txt", include_str!("../corpus/random16_edges.txt")),
    ("random24.txt", include_str!("../corpus/random24.txt")),
    ("random32_edges.txt", include_str!("../corpus/random32_edges.txt")),
    ("random40.txt", include_str!("../corpus/random40.txt")),
    ("single.txt", include_str!("../corpus/single.txt")),
    ("t6.txt", include_str!("../corpus/t6.txt")),
    ("t6_no_newline.txt", include_str!("../corpus/t6_no_newline.txt")),
    ("x4.txt", include_str!("../corpus/x4.txt")),
];

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifySummary {
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Parses one instance and cross-checks it: format round trips, every
/// census against the exhaustive oracle (where `n` is within its limit),
/// and every three- and four-vertex detector against oracle positivity.
pub fn verify_instance(name: &str, text: &str, summary: &mut VerifySummary) {
    summary.instances += 1;
    let mut check = |ok: bool, what: String| {
        summary.checks += 1;
        if !ok {
            summary.failures.push(format!("{name}: {what}"));
        }
    };
    let g = match format::parse_tournament(text) {
        Ok(g) => g,
        Err(e) => {
            check(false, format!("parse error: {e}"));
            return;
        }
    };
    for fmt in [TextFormat::Matrix, TextFormat::EdgeList] {
        let back = format::parse_tournament(&format::write(&g, fmt));
        check(back.as_ref() == Ok(&g), format!("{fmt:?} round trip"));
    }
    for k in 3..=5 {
        if g.n() > oracle_limit(k) {
            continue;
        }
        let oracle = oracle_count(&g, k).expect("within the oracle limit");
        match count_k(&g, k) {
            Ok(c) => check(c == oracle, format!("k={k} census differs from oracle")),
            Err(e) => check(false, format!("k={k} census failed: {e}")),
        }
        if k == 5 {
            continue;
        }
        for &p in PatternName::of_order(k) {
            let present = oracle.get(p) > 0;
            match detect(&g, p) {
                Ok(Some(w)) => check(present && w.verify(&g), format!("{p} witness")),
                Ok(None) => check(!present, format!("{p} missed")),
                Err(e) => check(false, format!("{p} detection failed: {e}")),
            }
        }
    }
}

pub fn verify_corpus<'a>(instances: impl IntoIterator<Item = (&'a str, &'a str)>) -> VerifySummary {
    let mut summary = VerifySummary::default();
    for (name, text) in instances {
        verify_instance(name, text, &mut summary);
    }
    summary
}

pub fn bundled() -> impl Iterator<Item = (&'static str, Tournament)> {
    CORPUS
        .iter()
        .map(|&(name, text)| (name, format::parse_tournament(text).expect("bundled corpus parses")))
}
