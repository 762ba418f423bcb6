//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::{Duration, Instant};

use rand::prelude::*;

use heffter::array::DiagonalIndex;
use heffter::boosters::{self, booster, filler_33, filler_43, strip_compose};
use heffter::dispatch::{construct, coverage_table, existence_status, Route, Verdict};
use heffter::ladder::build_h3;
use heffter::search::{crosscheck_with, solve, SearchConfig, SearchMode, SearchOutcome};
use heffter::shiftable::{augment4, build_hs4};

mod common;

#[test]
fn acceptance_1_golden_vector_verification() {
    let start = Instant::now();
    for (name, array) in common::all_golden() {
        let report = array.verify();
        assert!(report.is_valid(), "{name} failed verification:\n{report}");
    }
    // the three stored literals must match the transcriptions exactly
    assert_eq!(boosters::literal_h8_5(), common::h8_5());
    assert_eq!(boosters::literal_h7_5(), common::h7_5());
    assert_eq!(boosters::literal_h11_5(), common::h11_5());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("ACCEPTANCE 1 golden-vector verification: PASS ({elapsed:?})");
}

#[test]
fn acceptance_2_cell_exact_regeneration() {
    let start = Instant::now();
    assert_eq!(construct(13, 3).unwrap().array, common::h13_3(), "H(13;3)");
    assert_eq!(construct(12, 3).unwrap().array, common::h12_3(), "H(12;3)");
    assert_eq!(construct(4, 3).unwrap().array, common::h4_3(), "H(4;3)");
    assert_eq!(construct(7, 4).unwrap().array, common::hs7_4(), "H_s(7;4)");
    let composed = strip_compose(&common::h4_3(), &filler_33(4).unwrap()).unwrap();
    assert_eq!(composed, common::h12_5(), "H(12;5) strip composition");
    println!("ACCEPTANCE 2 cell-exact regeneration: PASS ({:?})", start.elapsed());
}

#[test]
fn acceptance_3_class_sweep_to_60() {
    let start = Instant::now();
    let mut built = 0usize;
    for n in 3..=60 {
        for k in 3..=n {
            let status = existence_status(n, k);
            if status.verdict != Verdict::Exists {
                continue;
            }
            let constructed = construct(n, k)
                .unwrap_or_else(|s| panic!("({n},{k}) classified Exists but got {:?}", s.verdict));
            let report = constructed.array.verify();
            assert!(report.is_valid(), "H({n};{k}) via {}:\n{report}", constructed.route);
            if constructed.route.promises_shiftable() {
                assert!(
                    constructed.array.is_shiftable(),
                    "H({n};{k}) via {} must be shiftable",
                    constructed.route
                );
            }
            if constructed.route.is_ladder_base() {
                assert!(
                    constructed.array.is_strippable().is_some(),
                    "H({n};3) main diagonal must be a primary transversal"
                );
            }
            built += 1;
        }
    }
    assert!(built > 500, "sweep looks too small: {built} cells");
    println!(
        "ACCEPTANCE 3 class sweep n <= 60 ({built} arrays): PASS ({:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_4_oracle_agreement() {
    let start = Instant::now();
    // every (n, k) with 3 <= k <= n and nk <= 16, exhaustively
    let mut cells = Vec::new();
    for n in 3..=16 {
        for k in 3..=n {
            if n * k <= 16 {
                cells.push((n, k));
            }
        }
    }
    assert_eq!(cells, vec![(3, 3), (4, 3), (4, 4), (5, 3)]);
    for &(n, k) in &cells {
        let agree = crosscheck_with(n, k, SearchMode::ExhaustAll, None)
            .unwrap_or_else(|e| panic!("crosscheck({n},{k}) indeterminate: {e}"));
        assert!(agree, "oracle disagrees with the dispatcher on ({n},{k})");
    }
    // (3,3) specifically: refuted by exhaustion, matching the congruence
    let refuted = solve(&SearchConfig::new(3, 3, SearchMode::ExhaustAll));
    assert!(matches!(refuted.outcome, SearchOutcome::NoneExists));

    for (n, k) in [(4, 3), (4, 4), (5, 3), (5, 4)] {
        let result = solve(&SearchConfig::new(n, k, SearchMode::FirstSolution));
        match result.outcome {
            SearchOutcome::Found(array) => {
                let report = array.verify();
                assert!(report.is_valid(), "found H({n};{k}) is invalid:\n{report}");
            }
            other => panic!("expected to find an H({n};{k}), got {other:?}"),
        }
        assert!(
            result.nodes_explored <= 10_000_000,
            "H({n};{k}) took {} nodes",
            result.nodes_explored
        );
    }
    println!("ACCEPTANCE 4 oracle agreement: PASS ({:?})", start.elapsed());
}

#[test]
fn acceptance_5_ingredient_invariants() {
    let start = Instant::now();
    for a in [0, 4, 8, 12] {
        for b in [0, 4, 8, 12] {
            let block = booster(a, b).unwrap();
            assert_eq!(block.row_sums(), [a, -a, -a, a], "B({a},{b}) rows");
            assert_eq!(block.col_sums(), [b, -b, -b, b], "B({a},{b}) cols");
            let mut support: Vec<i32> =
                block.cells().iter().flatten().map(|v| v.abs()).collect();
            support.sort_unstable();
            assert_eq!(support, (1..=16).collect::<Vec<_>>(), "B({a},{b}) support");
            for line in 0..4 {
                let row_pos = (0..4).filter(|&c| block.cells()[line][c] > 0).count();
                let col_pos = (0..4).filter(|&r| block.cells()[r][line] > 0).count();
                assert_eq!((row_pos, col_pos), (2, 2), "B({a},{b}) sign balance");
            }
        }
    }
    for n in 2..=50 {
        for (family, u, v) in [(filler_33(n).unwrap(), 3, 3), (filler_43(n).unwrap(), 4, 3)] {
            let mut seen = vec![false; n * u * v + 1];
            for (idx, filler) in family.iter().enumerate() {
                let t = idx as i32 + 1;
                assert_eq!(filler.row_sums(), vec![t; u], "({u};{v}) A_{t} rows, n={n}");
                assert_eq!(filler.col_sums(), vec![t; u], "({u};{v}) A_{t} cols, n={n}");
                for r in 0..u {
                    for c in 0..u {
                        if let Some(e) = filler.get(r, c) {
                            let a = e.unsigned_abs() as usize;
                            assert!(a >= 1 && a <= n * u * v, "out of range in A_{t}");
                            assert!(!seen[a], "duplicate {a} in ({u};{v}) family, n={n}");
                            seen[a] = true;
                        }
                    }
                }
            }
            assert!(seen[1..].iter().all(|&s| s), "({u};{v}) family misses values, n={n}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("ACCEPTANCE 5 ingredient invariants: PASS ({elapsed:?})");
}

#[test]
fn acceptance_6_augmentation_closure() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x4866_3374);
    // hosts with an empty run of length >= 4, drawn from both base builders
    let mut four_col_sides = Vec::new();
    let mut ladder_sides = Vec::new();
    for n in 8..=40 {
        four_col_sides.push(n);
        if n % 4 == 0 || n % 4 == 1 {
            ladder_sides.push(n);
        }
    }
    for case in 0..100 {
        let (host, first_empty) = if rng.gen_bool(0.5) {
            let n = *four_col_sides.choose(&mut rng).unwrap();
            (build_hs4(n).unwrap(), 1)
        } else {
            let n = *ladder_sides.choose(&mut rng).unwrap();
            (build_h3(n).unwrap(), 2)
        };
        let n = host.n();
        let k = host.k();
        let runs = host.empty_diagonal_runs();
        let &(run_start, run_len) = runs
            .iter()
            .find(|&&(d, _)| d.0 == first_empty)
            .expect("base builders leave one empty run");
        let start_diag = run_start.0 + rng.gen_range(0..=run_len - 4);
        let augmented = augment4(&host, DiagonalIndex(start_diag))
            .unwrap_or_else(|e| panic!("case {case}: augment H({n};{k}) at D_{start_diag}: {e}"));
        let report = augmented.verify();
        assert!(report.is_valid(), "case {case}: H({n};{}) invalid:\n{report}", k + 4);
        for line in 0..n {
            let row = (0..n).filter(|&c| augmented.get(line, c).is_some()).count();
            let col = (0..n).filter(|&r| augmented.get(r, line).is_some()).count();
            assert_eq!((row, col), (k + 4, k + 4), "case {case}: fill counts");
        }
        assert_eq!(augmented.is_shiftable(), host.is_shiftable(), "case {case}");
    }
    println!("ACCEPTANCE 6 augmentation closure: PASS ({:?})", start.elapsed());
}

#[test]
fn acceptance_7_coverage_table_fidelity() {
    let start = Instant::now();
    let table = coverage_table(60);
    let booster_floor = |n: usize| 4 * (n - 4).div_ceil(12) + 5;
    for n in 3..=60usize {
        for k in 3..=60usize {
            let verdict = table.cell(n, k).verdict;
            if k > n {
                assert_eq!(verdict, Verdict::OutOfScope, "({n},{k}) below the diagonal");
                continue;
            }
            let fully_solved = match k % 4 {
                0 => true,
                2 => n % 2 == 0,
                3 => n % 4 == 0 || n % 4 == 1,
                _ => {
                    n % 12 == 0
                        || n % 16 == 0
                        || n % 16 == 4
                        || n % 12 == 3
                        || (n % 4 == 0 && k >= booster_floor(n))
                }
            };
            if fully_solved {
                assert_ne!(verdict, Verdict::Unknown, "({n},{k}) is in a solved class");
            }
        }
    }
    assert_eq!(table.cell(28, 5).verdict, Verdict::Unknown);
    assert_eq!(table.cell(28, 9).verdict, Verdict::Unknown);
    // routes recorded for every existing cell
    for (n, k, status) in table.iter() {
        if status.verdict == Verdict::Exists {
            assert!(status.route.is_some(), "({n},{k}) exists without a route");
        }
    }
    // spot-check the dispatcher agrees with its own table
    assert_eq!(table.cell(13, 7).route, Some(Route::MobiusLadderAugmented));
    println!("ACCEPTANCE 7 coverage-table fidelity: PASS ({:?})", start.elapsed());
}
