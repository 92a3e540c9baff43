use tourney::catalog::oracle_count;
use tourney::detect::{check_d_free, detect, detect_brute_force, DFreeCheck};
use tourney::generators::*;
use tourney::{PatternName, Tournament};
use PatternName::*;

fn instances() -> Vec<Tournament> {
    let mut gs = Vec::new();
    for seed in 0..300u64 {
        let n = 3 + (seed as usize % 9);
        gs.push(random_tournament(n, seed));
    }
    let c3 = rotational(3, &[1]);
    for seed in 0..200u64 {
        let sizes = [1 + seed as usize % 4, 1 + seed as usize % 3, 2 + seed as usize % 5];
        let base = transitive_blowup(&c3, &sizes);
        gs.push(with_random_flips(&base, (seed % 3) as usize, seed));
        gs.push(with_random_flips(&transitive(4 + seed as usize % 30), (seed % 4) as usize, seed).transpose());
    }
    gs.push(rotational(7, &[1, 2, 4]));
    gs.push(carousel(9));
    gs
}

#[test]
fn detection_agrees_with_oracle() {
    let mut negatives = [0usize; 6];
    for (i, g) in instances().iter().enumerate() {
        let c3 = oracle_count(g, 3).unwrap();
        let c4 = if g.n() >= 4 { Some(oracle_count(g, 4).unwrap()) } else { None };
        for (slot, p) in [T3, C3, T4, X4, D, DT].into_iter().enumerate() {
            let present = if p.order() == 3 { c3.get(p) } else { c4.as_ref().map_or(0, |c| c.get(p)) } > 0;
            match detect(g, p).unwrap() {
                Some(w) => {
                    assert!(present, "{p} reported on instance {i}");
                    assert_eq!(w.pattern, p);
                    assert!(w.verify(g), "{p} witness on instance {i}");
                }
                None => {
                    assert!(!present, "{p} missed on instance {i}");
                    assert!(detect_brute_force(g, p).is_none());
                    negatives[slot] += 1;
                }
            }
        }
    }
    // Both answers must actually occur for every pattern.
    assert!(negatives.iter().all(|&k| k > 0), "{negatives:?}");
}

#[test]
fn d_free_certificates() {
    let c3 = rotational(3, &[1]);
    let free = transitive_blowup(&c3, &[5, 7, 6]);
    assert!(matches!(check_d_free(&free), DFreeCheck::Free(_)));
    assert!(matches!(check_d_free(&transitive(20)), DFreeCheck::Free(_)));
    let mut items = [false; 8];
    for seed in 0..3000u64 {
        let g = with_random_flips(&free, 1 + (seed % 3) as usize, seed);
        if let DFreeCheck::Found { witness, item } = check_d_free(&g) {
            assert!(witness.verify(&g));
            items[item as usize] = true;
        } else {
            assert_eq!(oracle_count(&g, 4).unwrap().get(D), 0);
        }
    }
    assert!(items[1..].iter().filter(|&&b| b).count() >= 3, "{items:?}");
}

#[test]
fn unsupported_patterns_rejected() {
    let g = random_tournament(8, 1);
    assert!(detect(&g, H4).is_err());
    assert!(detect(&g, R5).is_err());
}
